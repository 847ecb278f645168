#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace gmcat {

enum class Status { pass, fail, bound_exceeded };

std::string_view to_string(Status status);

// Outcome of a single named law or property, evaluated over many instances.
class Check {
 public:
  static constexpr std::size_t max_witnesses = 5;

  explicit Check(std::string name);

  // Counts one instance; on failure stores the lazily built witness.
  template <class Witness>
  void expect(bool ok, Witness&& witness) {
    ++instances_;
    if (!ok) fail(failures_ < max_witnesses ? std::string(witness()) : std::string());
  }
  void fail(std::string witness);
  void count(std::size_t instances = 1) { instances_ += instances; }
  void bound_exceeded(std::string what);
  void set_sampled(bool sampled) { sampled_ = sampled; }

  const std::string& name() const { return name_; }
  Status status() const { return status_; }
  std::size_t instances() const { return instances_; }
  std::size_t failures() const { return failures_; }
  bool sampled() const { return sampled_; }
  const std::vector<std::string>& witnesses() const { return witnesses_; }
  bool ok() const { return status_ == Status::pass; }

 private:
  friend class Report;

  std::string name_;
  Status status_ = Status::pass;
  std::size_t instances_ = 0;
  std::size_t failures_ = 0;
  bool sampled_ = false;
  std::vector<std::string> witnesses_;
};

// Ordered list of checks. Empty of failures means the structure is valid.
class Report {
 public:
  // Runs body against a fresh check. Truncation errors become bound_exceeded,
  // structural errors and invariant violations become failures.
  Check& run(std::string name, const std::function<void(Check&)>& body);
  void add(Check check);
  void append(const Report& other, std::string_view prefix = {});

  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(std::string_view name) const;
  bool ok() const { return status() == Status::pass; }
  Status status() const;
  std::vector<std::string> violations() const;

  nlohmann::json to_json() const;
  std::string summary() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace gmcat
