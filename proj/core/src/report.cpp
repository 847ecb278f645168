#include "gmcat/report.hpp"

#include <sstream>
#include <utility>

#include "gmcat/errors.hpp"

namespace gmcat {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::bound_exceeded:
      return "bound-exceeded";
  }
  return "unknown";
}

Check::Check(std::string name) : name_(std::move(name)) {}

void Check::fail(std::string witness) {
  ++failures_;
  status_ = Status::fail;
  if (witnesses_.size() < max_witnesses) witnesses_.push_back(std::move(witness));
}

void Check::bound_exceeded(std::string what) {
  if (status_ == Status::pass) status_ = Status::bound_exceeded;
  if (witnesses_.size() < max_witnesses) witnesses_.push_back("bound exceeded: " + std::move(what));
}

Check& Report::run(std::string name, const std::function<void(Check&)>& body) {
  Check check(std::move(name));
  try {
    body(check);
  } catch (const TruncationError& e) {
    check.bound_exceeded(e.what());
  } catch (const StructuralError& e) {
    check.fail(std::string("structural error: ") + e.what());
  } catch (const InvariantViolation& e) {
    check.fail(std::string("invariant violation: ") + e.what());
  }
  checks_.push_back(std::move(check));
  return checks_.back();
}

void Report::add(Check check) { checks_.push_back(std::move(check)); }

void Report::append(const Report& other, std::string_view prefix) {
  for (const auto& check : other.checks_) {
    if (prefix.empty()) {
      checks_.push_back(check);
      continue;
    }
    Check renamed = check;
    renamed.name_ = std::string(prefix) + "." + check.name();
    checks_.push_back(std::move(renamed));
  }
}

const Check* Report::find(std::string_view name) const {
  for (const auto& check : checks_) {
    if (check.name() == name) return &check;
  }
  return nullptr;
}

Status Report::status() const {
  Status result = Status::pass;
  for (const auto& check : checks_) {
    if (check.status() == Status::fail) return Status::fail;
    if (check.status() == Status::bound_exceeded) result = Status::bound_exceeded;
  }
  return result;
}

std::vector<std::string> Report::violations() const {
  std::vector<std::string> out;
  for (const auto& check : checks_) {
    if (check.status() == Status::pass) continue;
    for (const auto& w : check.witnesses()) out.push_back(check.name() + ": " + w);
  }
  return out;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& check : checks_) {
    nlohmann::json entry{
        {"name", check.name()},
        {"status", std::string(to_string(check.status()))},
        {"instances", check.instances()},
        {"failures", check.failures()},
        {"witnesses", check.witnesses()},
    };
    if (check.sampled()) entry["sampled"] = true;
    checks.push_back(std::move(entry));
  }
  return {{"status", std::string(to_string(status()))}, {"checks", std::move(checks)}};
}

std::string Report::summary() const {
  std::ostringstream out;
  for (const auto& check : checks_) {
    out << "  [" << to_string(check.status()) << "] " << check.name() << " (" << check.instances()
        << " instances)\n";
    for (const auto& w : check.witnesses()) out << "      " << w << "\n";
  }
  out << "overall: " << to_string(status()) << "\n";
  return out.str();
}

}  // namespace gmcat
