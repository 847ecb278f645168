#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "gmcat/adjoint.hpp"
#include "gmcat/serialize.hpp"

namespace {

using gmcat::Json;

enum ExitCode : int { exit_pass = 0, exit_violation = 1, exit_input = 2, exit_bound = 3 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string operad = "barratt-eccles";
  std::optional<std::size_t> truncate;
  std::size_t bound = 3;
  std::uint64_t seed = 0;
  std::vector<std::string> hom;
  bool hat = false;
  bool require_sigma_free = false;
  bool inject_fault = false;
  std::string out;
  std::vector<std::string> argv;

  std::size_t truncation() const { return truncate.value_or(bound); }

  Json to_json() const {
    Json j{{"command", command},
           {"argv", argv},
           {"inputs", inputs},
           {"operad", operad},
           {"truncate", truncation()},
           {"bound", bound},
           {"seed", seed},
           {"hat", hat},
           {"require_sigma_free", require_sigma_free},
           {"inject_fault", inject_fault}};
    if (!hom.empty()) j["hom"] = hom;
    return j;
  }
};

struct Outcome {
  gmcat::Report report;
  Json result = Json::object();
};

// Thrown for unusable inputs; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

gmcat::CatOperad load_operad(const RunConfig& cfg) {
  const std::filesystem::path path(cfg.operad);
  if (std::filesystem::exists(path)) {
    Json j = gmcat::load_json_file(path);
    // a file without its own truncation picks up --truncate
    if (j.contains("builtin") && !j.contains("truncate")) j["truncate"] = cfg.truncation();
    auto op = gmcat::operad_from_json(j);
    if (op.max_level() < cfg.bound) throw InputError("operad truncation is below the arity bound");
    return op;
  }
  return gmcat::builtin_operad(cfg.operad, cfg.truncation());
}

// Fails the report and returns nullopt when the operad is not Sigma-free.
std::optional<gmcat::Monad> make_monad(const RunConfig& cfg, const gmcat::CatOperad& op, gmcat::Report& report) {
  try {
    const auto fault = cfg.inject_fault ? gmcat::Monad::Fault::mu_skips_canonicalization : gmcat::Monad::Fault::none;
    return gmcat::Monad(op, fault);
  } catch (const gmcat::FreenessError& e) {
    report.run("operad.sigma_free", [&](gmcat::Check& check) {
      check.count();
      check.fail(e.what());
    });
    return std::nullopt;
  }
}

const std::string& input(const RunConfig& cfg, std::size_t i, const char* what) {
  if (i >= cfg.inputs.size()) throw InputError(std::string("missing input: ") + what);
  return cfg.inputs[i];
}

Outcome validate_operad(const RunConfig& cfg) {
  Outcome out;
  RunConfig local = cfg;
  if (!cfg.inputs.empty()) local.operad = cfg.inputs.front();
  const auto op = load_operad(local);
  out.report = gmcat::validate_operad(op);
  const auto witness = gmcat::sigma_freeness_witness(op);
  out.result["name"] = op.name();
  out.result["truncate"] = op.max_level();
  out.result["sigma_free"] = !witness.has_value();
  if (witness) {
    const std::string text = "level " + std::to_string(witness->arity) + ": " + witness->element.str() + " fixes " +
                             std::string(gmcat::to_string(witness->degree)) + " " + witness->cell;
    out.result["fixed_point"] = text;
    if (cfg.require_sigma_free) {
      out.report.run("operad.sigma_free", [&](gmcat::Check& check) {
        check.count();
        check.fail(text);
      });
    }
  } else if (cfg.require_sigma_free) {
    out.report.run("operad.sigma_free", [](gmcat::Check& check) { check.count(); });
  }
  return out;
}

Outcome validate_multicat(const RunConfig& cfg) {
  Outcome out;
  const auto op = load_operad(cfg);
  const auto monad = make_monad(cfg, op, out.report);
  if (!monad) return out;
  const auto classical = gmcat::classical_from_json(gmcat::load_json_file(input(cfg, 0, "multicategory file")),
                                                    monad->max_arity());
  std::optional<gmcat::FinMulticat> m;
  out.report.run("multicat.encoding", [&](gmcat::Check& check) {
    check.count();
    m = gmcat::encode_classical(classical, *monad);
  });
  if (!m) return out;
  out.report.append(gmcat::validate_multicat(*m, cfg.bound));
  out.result["multicat"] = gmcat::multicat_to_json(*m);
  return out;
}

template <class Fn>
auto with_algebra(const RunConfig& cfg, const gmcat::Monad& monad, std::size_t index, Fn&& fn) {
  const auto a = gmcat::algebra_from_json(gmcat::load_json_file(input(cfg, index, "algebra file")), monad);
  return std::visit(std::forward<Fn>(fn), a);
}

Outcome validate_algebra(const RunConfig& cfg) {
  Outcome out;
  const auto op = load_operad(cfg);
  const auto monad = make_monad(cfg, op, out.report);
  if (!monad) return out;
  with_algebra(cfg, *monad, 0, [&](const auto& a) { out.report.append(gmcat::validate_algebra(a, cfg.bound)); });
  return out;
}

Outcome underlying(const RunConfig& cfg) {
  Outcome out;
  const auto op = load_operad(cfg);
  const auto monad = make_monad(cfg, op, out.report);
  if (!monad) return out;
  with_algebra(cfg, *monad, 0, [&](const auto& a) {
    out.report.append(gmcat::validate_algebra(a, cfg.bound), "algebra");
    if (!out.report.ok()) return;
    const auto u = gmcat::underlying(a);
    out.report.append(gmcat::validate_multicat(u, cfg.bound), "underlying");
    out.result["multicat"] = gmcat::multicat_to_json(gmcat::tabulate(u, cfg.bound));
  });
  return out;
}

gmcat::FinMulticat load_multicat(const RunConfig& cfg, const gmcat::Monad& monad) {
  return gmcat::multicat_from_json(gmcat::load_json_file(input(cfg, 0, "multicategory file")), monad);
}

template <class Algebra>
Json hom_json(const Algebra& l, const gmcat::DElem<gmcat::ObjId>& x, const gmcat::DElem<gmcat::ObjId>& y,
              const gmcat::FinMulticat& m) {
  const auto& mo = m.monad();
  auto show = [&](const gmcat::DElem<gmcat::ObjId>& e) {
    return mo.describe(e, [&](gmcat::ObjId a) { return m.describe_object(a); });
  };
  Json j{{"source", show(x)}, {"target", show(y)}};
  Json classes = Json::array();
  if constexpr (requires { l.classes(x, y); }) {
    const auto c = l.classes(x, y);
    std::vector<std::size_t> sizes(c->representatives.size(), 0);
    for (std::size_t k : c->class_of) ++sizes[k];
    for (std::size_t k = 0; k < c->representatives.size(); ++k) {
      classes.push_back({{"representative", l.describe(c->representatives[k])}, {"size", sizes[k]}});
    }
    j["members"] = c->members.size();
    j["relation_instances"] = c->relation_instances;
  } else {
    for (const auto& f : l.hom(x, y)) classes.push_back({{"representative", l.describe(f)}, {"size", 1}});
    j["members"] = classes.size();
  }
  j["count"] = classes.size();
  j["classes"] = classes;
  return j;
}

Outcome free_construction(const RunConfig& cfg) {
  Outcome out;
  const auto op = load_operad(cfg);
  const auto monad = make_monad(cfg, op, out.report);
  if (!monad) return out;
  const auto m = load_multicat(cfg, *monad);
  if (cfg.hom.size() != 2) throw InputError("free needs --hom SRC TGT");
  const auto x = gmcat::parse_object_list(m, cfg.hom[0]);
  const auto y = gmcat::parse_object_list(m, cfg.hom[1]);
  out.report.run("free.hom", [&](gmcat::Check& check) {
    if (x.arity > cfg.bound || y.arity > cfg.bound) {
      check.bound_exceeded("hom endpoints exceed the arity bound " + std::to_string(cfg.bound));
      return;
    }
    if (cfg.hat) {
      out.result["hom"] = hom_json(gmcat::hat_L(m), x, y, m);
    } else {
      out.result["hom"] = hom_json(gmcat::L(m), x, y, m);
    }
    check.count(out.result["hom"]["members"].get<std::size_t>());
  });
  out.result["construction"] = cfg.hat ? "hat" : "quotient";
  return out;
}

Outcome check_adjunction(const RunConfig& cfg) {
  Outcome out;
  const auto op = load_operad(cfg);
  const auto monad = make_monad(cfg, op, out.report);
  if (!monad) return out;
  const auto m = load_multicat(cfg, *monad);
  if (cfg.hat) {
    out.report.append(gmcat::check_unit(gmcat::hat_L(m), m, cfg.bound), "hat-unit");
    if (const auto w = gmcat::witness_hat_unit_failure(m, cfg.bound)) {
      out.result["hat_witness"] = {{"operation", m.describe(w->f)},
                                   {"delta", monad->describe(w->delta, [&](gmcat::ObjId a) { return m.describe_object(a); })},
                                   {"description", w->description},
                                   {"agree_after_quotient", w->agree_in_L}};
    } else {
      out.result["hat_witness"] = nullptr;
    }
    return out;
  }
  with_algebra(cfg, *monad, 1, [&](const auto& a) {
    const auto l = gmcat::L(m);
    out.report.append(gmcat::check_unit(l, m, cfg.bound), "unit");
    out.report.append(gmcat::check_coequalizer(l, cfg.bound));
    out.report.append(gmcat::check_counit(gmcat::Counit(a), cfg.bound));
    out.report.append(gmcat::check_triangles(m, a, cfg.bound));
  });
  return out;
}

int exit_code(const gmcat::Report& report) {
  switch (report.status()) {
    case gmcat::Status::pass: return exit_pass;
    case gmcat::Status::fail: return exit_violation;
    case gmcat::Status::bound_exceeded: return exit_bound;
  }
  return exit_violation;
}

void emit(const RunConfig& cfg, const Json& report, const std::string& summary) {
  const std::string body = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cerr << summary;
    std::cout << body;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + cfg.out);
  file << body;
  std::cout << summary;
}

int run(const RunConfig& cfg, Outcome (*command)(const RunConfig&)) {
  const auto start = std::chrono::steady_clock::now();
  Json report{{"config", cfg.to_json()}};
  std::string summary = "gmcat " + cfg.command + ": ";
  int code = exit_pass;
  try {
    try {
      if (cfg.bound < 1) throw InputError("--bound must be at least 1");
      if (cfg.truncation() < cfg.bound) throw InputError("--truncate must be at least --bound");
      Outcome outcome = command(cfg);
      code = exit_code(outcome.report);
      const Json checks = outcome.report.to_json();
      report["status"] = checks["status"];
      report["checks"] = checks["checks"];
      report["result"] = std::move(outcome.result);
      summary += std::string(gmcat::to_string(outcome.report.status())) + "\n" + outcome.report.summary();
    } catch (const gmcat::ParseError& e) {
      throw InputError(e.what());
    } catch (const gmcat::PreconditionError& e) {
      throw InputError(e.what());
    } catch (const gmcat::StructuralError& e) {
      // the input parsed but does not satisfy the axioms
      report["status"] = "fail";
      report["error"] = e.what();
      summary += std::string("fail\n  ") + e.what() + "\n";
      code = exit_violation;
    } catch (const gmcat::TruncationError& e) {
      report["status"] = "bound-exceeded";
      report["error"] = e.what();
      summary += std::string("bound-exceeded\n  ") + e.what() + "\n";
      code = exit_bound;
    }
  } catch (const InputError& e) {
    report["status"] = "input-error";
    report["error"] = e.what();
    summary += std::string("input error\n  ") + e.what() + "\n";
    code = exit_input;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  summary += "elapsed: " + std::to_string(ms.count()) + " ms\n";
  try {
    emit(cfg, report, summary);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return exit_input;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and check free permutative categories, underlying multicategories and their adjunction"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::size_t truncate = 0;
  app.add_option("--operad", cfg.operad, "Builtin operad name or operad JSON file")->capture_default_str();
  auto* truncate_opt = app.add_option("--truncate", truncate, "Operad truncation (defaults to the bound)");
  app.add_option("--bound", cfg.bound, "Arity bound for checks")->envname("GMCAT_BOUND")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
  app.add_flag("--require-sigma-free", cfg.require_sigma_free, "Fail when the operad is not Sigma-free");
  app.add_flag("--inject-fault", cfg.inject_fault, "Corrupt the monad multiplication to exercise the checks");
  app.add_option("--out", cfg.out, "Write the JSON report here (summary goes to stdout)");

  Outcome (*command)(const RunConfig&) = nullptr;

  auto* validate = app.add_subcommand("validate", "Check the axioms of an operad, multicategory or algebra");
  validate->require_subcommand(1);
  auto* v_operad = validate->add_subcommand("operad", "Validate an operad (builtin name or file)");
  v_operad->add_option("path", cfg.inputs, "Operad JSON file or builtin name");
  v_operad->callback([&] { command = validate_operad; cfg.command = "validate operad"; });
  auto* v_multicat = validate->add_subcommand("multicat", "Validate a multicategory file");
  v_multicat->add_option("path", cfg.inputs, "Multicategory JSON file")->required();
  v_multicat->callback([&] { command = validate_multicat; cfg.command = "validate multicat"; });
  auto* v_algebra = validate->add_subcommand("algebra", "Validate an algebra file");
  v_algebra->add_option("path", cfg.inputs, "Algebra JSON file")->required();
  v_algebra->callback([&] { command = validate_algebra; cfg.command = "validate algebra"; });

  auto* free = app.add_subcommand("free", "Enumerate a hom-set of the free permutative category");
  free->add_option("path", cfg.inputs, "Multicategory JSON file")->required();
  free->add_option("--hom", cfg.hom, "Source and target object lists, e.g. a,a a")->expected(2)->required();
  free->add_flag("--hat", cfg.hat, "Use the construction before the quotient");
  free->callback([&] { command = free_construction; cfg.command = "free"; });

  auto* under = app.add_subcommand("underlying", "Dump and validate the underlying multicategory of an algebra");
  under->add_option("path", cfg.inputs, "Algebra JSON file")->required();
  under->callback([&] { command = underlying; cfg.command = "underlying"; });

  auto* adj = app.add_subcommand("check-adjunction", "Check unit, counit and triangle identities");
  adj->add_option("paths", cfg.inputs, "Multicategory file, then algebra file")->expected(1, 2)->required();
  adj->add_flag("--hat", cfg.hat, "Check the unit into the construction before the quotient");
  adj->callback([&] { command = check_adjunction; cfg.command = "check-adjunction"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), exit_input);
  }
  if (truncate_opt->count() > 0) cfg.truncate = truncate;
  // echoed into the report; --out is left out so reports do not depend on where they go
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--out") {
      ++i;
      continue;
    }
    if (arg.starts_with("--out=")) continue;
    cfg.argv.emplace_back(arg);
  }
  if (cfg.command == "check-adjunction" && !cfg.hat && cfg.inputs.size() != 2) {
    std::cerr << "check-adjunction needs a multicategory file and an algebra file\n";
    return exit_input;
  }
  return run(cfg, command);
}
