// Acceptance gate: one line per criterion, exit status 0 only if all pass.
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "gmcat/adjoint.hpp"
#include "orbit_squares.hpp"
#include "random_covers.hpp"

namespace {

using namespace gmcat;
using Json = nlohmann::json;

constexpr std::uint64_t seed = 20240601;

// A suite returns its report plus any extra facts it asserted on.
struct SuiteResult {
  Report report;
  Json facts = Json::object();
};

struct Criterion {
  int number;
  std::string name;
  double time_limit_s;  // 0 means no stated limit
  std::function<SuiteResult()> run;
};

Monad es(std::size_t n) { return Monad(barratt_eccles(n)); }
Monad ass(std::size_t n) { return Monad(associativity_operad(n)); }

DElem<ObjId> power(const Monad& mo, std::size_t n) {
  return mo.make(Degree::object, n, 0, std::vector<ObjId>(n, ObjId{0}));
}

// Independent oracles: plain enumeration, no closed forms.
std::size_t count_functions(std::size_t m, std::size_t n) {
  std::size_t count = 0;
  std::vector<std::size_t> f(m, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m) {
      ++count;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

std::size_t count_compositions(std::size_t m, std::size_t n) {
  if (n == 0) return m == 0 ? 1 : 0;
  std::size_t count = 0;
  for (std::size_t first = 0; first <= m; ++first) count += count_compositions(m - first, n - 1);
  return count;
}

SuiteResult operad_suite() {
  SuiteResult out;
  out.report.append(validate_operad(barratt_eccles(4)), "barratt-eccles");
  out.report.append(validate_operad(associativity_operad(4)), "associativity");
  out.report.run("sigma_free", [](Check& check) {
    check.expect(is_sigma_free(barratt_eccles(4)), [] { return std::string("barratt-eccles(4) has a fixed point"); });
    check.expect(is_sigma_free(associativity_operad(4)), [] { return std::string("associativity(4) has a fixed point"); });
  });
  out.report.run("commutative.fixed_point", [&](Check& check) {
    const auto w = sigma_freeness_witness(commutative_operad(4));
    check.expect(w.has_value(), [] { return std::string("commutative(4) reported as Sigma-free"); });
    if (w) out.facts["commutative_fixed_point"] = "level " + std::to_string(w->arity) + ": " + w->element.str() + " fixes " + w->cell;
  });
  return out;
}

SuiteResult cartesian_suite() {
  SuiteResult out;
  CartesianOptions options;
  options.squares = 100;
  options.max_set = 5;
  options.bound = 3;
  options.seed = seed;
  for (const auto& [name, mo] : {std::pair{"barratt-eccles", es(4)}, std::pair{"associativity", ass(4)}}) {
    for (Degree d : {Degree::object, Degree::morphism}) {
      out.report.append(check_cartesian(mo, d, options), std::string(name) + ".D" + (d == Degree::object ? "0" : "1"));
    }
  }
  // the commutative operad must break mu-naturality
  const Monad comm = Monad::without_freeness_check(commutative_operad(4));
  CartesianOptions few = options;
  few.squares = 10;
  const auto report = check_cartesian(comm, Degree::object, few);
  const Check* mu = report.find("mu_naturality");
  out.report.run("commutative.mu_naturality_fails", [&](Check& check) {
    check.expect(mu && mu->status() == Status::fail && !mu->witnesses().empty(),
                 [] { return std::string("no mu-naturality failure for the commutative operad"); });
    if (mu && !mu->witnesses().empty()) out.facts["commutative_witness"] = mu->witnesses().front();
  });
  return out;
}

SuiteResult cover_suite() {
  SuiteResult out;
  std::mt19937_64 rng(seed);
  const Monad mo = es(3);
  for (int i = 0; i < 10; ++i) {
    const auto cover = testing::random_cover(rng);
    out.report.run("cover" + std::to_string(i) + ".is_cover", [&](Check& check) {
      check.expect(is_target_cover(cover), [] { return std::string("generated functor is not a target cover"); });
    });
    out.report.append(check_preserves_cover(mo, cover, 3), "cover" + std::to_string(i));
  }
  return out;
}

SuiteResult orbit_suite() {
  SuiteResult out;
  std::mt19937_64 rng(seed);
  out.report.run("orbit_pullbacks", [&](Check& check) {
    for (int i = 0; i < 50; ++i) {
      const auto r = testing::orbit_square(rng, 2 + i % 2, false);
      check.expect(r.quotient_is_pullback, [&] { return r.description; });
    }
  });
  return out;
}

SuiteResult underlying_suite() {
  SuiteResult out;
  const auto u = underlying(sum_algebra(es(3)));
  out.report = validate_multicat(u, 3);
  out.report.run("m3_associativity_present", [&](Check& check) {
    const Check* assoc = out.report.find("composition.associativity");
    check.expect(assoc && assoc->instances() > 0, [] { return std::string("associativity square was not exercised"); });
  });
  return out;
}

SuiteResult free_oracle_suite() {
  SuiteResult out;
  const auto sym = from_symmetric(terminal_multicat(4, true), es(4));
  const auto nonsym = from_nonsymmetric(terminal_multicat(4, false), ass(4));
  const auto l_sym = L(sym);
  const auto l_nonsym = L(nonsym);
  Json table = Json::array();
  out.report.run("symmetric.functions", [&](Check& check) {
    for (std::size_t a = 0; a <= 4; ++a) {
      for (std::size_t b = 0; b <= 4; ++b) {
        const std::size_t got = l_sym.hom(power(sym.monad(), a), power(sym.monad(), b)).size();
        const std::size_t want = count_functions(a, b);
        table.push_back({{"m", a}, {"n", b}, {"symmetric", got}});
        check.expect(got == want, [&] {
          return "hom(" + std::to_string(a) + "," + std::to_string(b) + ") = " + std::to_string(got) + ", oracle " + std::to_string(want);
        });
      }
    }
  });
  out.report.run("nonsymmetric.compositions", [&](Check& check) {
    for (std::size_t a = 0; a <= 4; ++a) {
      for (std::size_t b = 0; b <= 4; ++b) {
        const std::size_t got = l_nonsym.hom(power(nonsym.monad(), a), power(nonsym.monad(), b)).size();
        const std::size_t want = count_compositions(a, b);
        table[a * 5 + b]["nonsymmetric"] = got;
        check.expect(got == want, [&] {
          return "hom(" + std::to_string(a) + "," + std::to_string(b) + ") = " + std::to_string(got) + ", oracle " + std::to_string(want);
        });
      }
    }
  });
  out.facts["hom_counts"] = table;
  return out;
}

SuiteResult adjunction_suite() {
  SuiteResult out;
  const auto nonsym = from_nonsymmetric(terminal_multicat(3, false), ass(3));
  const FreeAlgebra free(nonsym.monad(), cyclic_group_category(2));
  const auto sym = from_symmetric(terminal_multicat(3, true), es(3));
  const auto sum = sum_algebra(sym.monad());

  out.report.append(check_triangles(nonsym, free, 3), "free-pair");
  out.report.append(check_triangles(sym, sum, 3), "sum-pair");
  out.report.append(check_unit(L(nonsym), nonsym, 3), "free-pair.unit");
  out.report.append(check_unit(L(sym), sym, 3), "sum-pair.unit");
  out.report.append(check_counit(Counit(free), 3), "free-pair");
  out.report.append(check_counit(Counit(sum), 3), "sum-pair");
  return out;
}

SuiteResult hat_witness_suite() {
  SuiteResult out;
  const auto sym = from_symmetric(terminal_multicat(3, true), es(3));
  const auto w = witness_hat_unit_failure(sym, 3);
  out.report.run("hat.witness_found", [&](Check& check) {
    check.expect(w.has_value(), [] { return std::string("no presheaf counterexample for the hat-level unit"); });
    if (w) out.facts["witness"] = w->description;
  });
  out.report.run("quotient.sides_agree", [&](Check& check) {
    check.expect(w && w->agree_in_L, [] { return std::string("the witness sides differ after the quotient"); });
  });
  const auto hat = check_unit(hat_L(sym), sym, 3);
  out.report.run("hat.fails_only_at_presheaf", [&](Check& check) {
    for (const auto& c : hat.checks()) {
      const bool expected_fail = c.name() == "map.presheaf";
      check.expect(expected_fail ? c.status() == Status::fail : c.ok(), [&] { return c.name() + " has the wrong status"; });
    }
  });
  out.report.append(check_unit(L(sym), sym, 3), "quotient.unit");
  return out;
}

std::string fingerprint(const SuiteResult& r) {
  return Json{{"report", r.report.to_json()}, {"facts", r.facts}}.dump();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "operad suite", 10, operad_suite},
      {2, "cartesian suite", 60, cartesian_suite},
      {3, "cover suite", 0, cover_suite},
      {4, "orbit suite", 0, orbit_suite},
      {5, "underlying multicategory suite", 30, underlying_suite},
      {6, "free construction oracle", 120, free_oracle_suite},
      {7, "adjunction suite", 0, adjunction_suite},
      {8, "hat-level failure witness", 0, hat_witness_suite},
  };

  Json all = Json::object();
  std::vector<std::string> first_run;
  bool all_pass = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    std::string error;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s == 0 || elapsed < c.time_limit_s;
    const bool pass = error.empty() && r.report.ok() && in_time;
    all_pass = all_pass && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.name << " (" << std::fixed
              << std::setprecision(2) << elapsed << " s";
    if (c.time_limit_s > 0) std::cout << ", limit " << c.time_limit_s << " s";
    std::cout << ")";
    if (!error.empty()) std::cout << " error: " << error;
    if (error.empty() && !r.report.ok()) {
      const auto v = r.report.violations();
      std::cout << " " << to_string(r.report.status()) << ": " << (v.empty() ? std::string() : v.front());
    }
    std::cout << std::endl;
    first_run.push_back(error.empty() ? fingerprint(r) : error);
    all[std::to_string(c.number)] = Json{{"name", c.name}, {"report", r.report.to_json()}, {"facts", r.facts}};
  }

  // criterion 9: every suite again with the same seed, byte-identical reports
  {
    const auto start = std::chrono::steady_clock::now();
    std::vector<int> differing;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      std::string again;
      try {
        again = fingerprint(criteria[i].run());
      } catch (const std::exception& e) {
        again = e.what();
      }
      if (again != first_run[i]) differing.push_back(criteria[i].number);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = differing.empty();
    all_pass = all_pass && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion 9: determinism (" << std::fixed << std::setprecision(2) << elapsed
              << " s)";
    for (int n : differing) std::cout << " differs: " << n;
    std::cout << std::endl;
  }

  if (argc > 1) std::ofstream(argv[1]) << all.dump(2) << "\n";
  return all_pass ? 0 : 1;
}
