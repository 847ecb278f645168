#include <gtest/gtest.h>

#include <thread>

#include "gmcat/adjoint.hpp"

namespace gmcat {
namespace {

Monad es(std::size_t n) { return Monad(barratt_eccles(n)); }
Monad ass(std::size_t n) { return Monad(associativity_operad(n)); }

FinMulticat terminal_sym(std::size_t n) { return from_symmetric(terminal_multicat(n, true), es(n)); }
FinMulticat terminal_nonsym(std::size_t n) { return from_nonsymmetric(terminal_multicat(n, false), ass(n)); }

DElem<ObjId> power(const Monad& mo, std::size_t n) {
  return mo.make(Degree::object, n, 0, std::vector<ObjId>(n, ObjId{0}));
}

// Oracle: functions {1..m} -> {1..n}, enumerated.
std::size_t count_functions(std::size_t m, std::size_t n) {
  if (m == 0) return 1;
  if (n == 0) return 0;
  std::vector<std::size_t> f(m, 0);
  std::size_t count = 0;
  while (true) {
    ++count;
    std::size_t i = 0;
    for (; i < m; ++i) {
      if (++f[i] < n) break;
      f[i] = 0;
    }
    if (i == m) return count;
  }
}

// Oracle: ordered tuples of n naturals summing to m.
std::size_t count_compositions(std::size_t m, std::size_t n) {
  if (n == 0) return m == 0 ? 1 : 0;
  std::size_t count = 0;
  for (std::size_t first = 0; first <= m; ++first) count += count_compositions(m - first, n - 1);
  return count;
}

TEST(Oracles, FrozenValues) {
  EXPECT_EQ(count_functions(2, 2), 4u);
  EXPECT_EQ(count_functions(3, 2), 8u);
  EXPECT_EQ(count_functions(0, 0), 1u);
  EXPECT_EQ(count_functions(2, 0), 0u);
  EXPECT_EQ(count_compositions(2, 2), 3u);
  EXPECT_EQ(count_compositions(4, 3), 15u);
  EXPECT_EQ(count_compositions(0, 0), 1u);
}

TEST(HatL, NonSymmetricHomHasThreeElements) {
  const auto m = terminal_nonsym(3);
  const auto hat = hat_L(m);
  const auto& mo = m.monad();
  EXPECT_EQ(hat.hom(power(mo, 2), power(mo, 2)).size(), 3u);
}

TEST(HatL, SymmetricHomHasOnePerPermutation) {
  const auto m = terminal_sym(3);
  const auto hat = hat_L(m);
  const auto& mo = m.monad();
  const auto hom = hat.hom(power(mo, 2), power(mo, 1));
  ASSERT_EQ(hom.size(), 2u);
  EXPECT_EQ(hom[0].phi, hom[1].phi);
  EXPECT_NE(hom[0].sigma, hom[1].sigma);
}

TEST(HatL, IdentityIsAUnit) {
  const auto m = terminal_sym(3);
  const auto hat = hat_L(m);
  const auto& mo = m.monad();
  for (std::size_t a = 0; a <= 2; ++a) {
    for (std::size_t b = 0; b <= 2; ++b) {
      for (const auto& e : hat.hom(power(mo, a), power(mo, b))) {
        EXPECT_EQ(hat.compose(hat.identity(power(mo, b)), e), e);
        EXPECT_EQ(hat.compose(e, hat.identity(power(mo, a))), e);
      }
    }
  }
}

TEST(HatL, CategoryLaws) {
  const auto report = check_category_laws(hat_L(terminal_sym(3)), 3);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_TRUE(check_category_laws(hat_L(from_symmetric(two_object_multicat(), es(2))), 2).ok());
}

TEST(HatL, AlgebraLaws) {
  const auto report = validate_algebra(hat_L(terminal_sym(2)), 2);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_TRUE(validate_algebra(hat_L(terminal_nonsym(3)), 2).ok());
}

TEST(Unflatten, RecoversBlocks) {
  const auto mo = es(3);
  using L = DElem<std::size_t>;
  const L first = mo.make(Degree::object, 2, 1, std::vector<std::size_t>{7, 8});
  const L second = mo.make(Degree::object, 1, 0, std::vector<std::size_t>{9});
  const auto shape = mo.make(Degree::object, 2, 1, std::vector<L>{first, second});
  const auto flat = mo.mu(shape);
  EXPECT_EQ(unflatten(mo, shape, flat), shape);
}

TEST(Coequalizer, ReflexiveOnEqualElements) {
  const auto m = terminal_sym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  for (const auto& e : l.hat().hom(power(mo, 2), power(mo, 2))) EXPECT_TRUE(coeq_equiv(l, e, e));
}

TEST(Coequalizer, SwapIsAbsorbedForSymmetricTerminal) {
  const auto m = terminal_sym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  const auto hom = l.hat().hom(power(mo, 2), power(mo, 1));
  ASSERT_EQ(hom.size(), 2u);
  EXPECT_TRUE(coeq_equiv(l, hom[0], hom[1]));
  EXPECT_EQ(l.hom(power(mo, 2), power(mo, 1)).size(), 1u);
}

TEST(Coequalizer, DiscreteForNonSymmetricTerminal) {
  const auto m = terminal_nonsym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  const auto hom = l.hat().hom(power(mo, 2), power(mo, 2));
  ASSERT_EQ(hom.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_FALSE(coeq_equiv(l, hom[i], hom[j]));
  }
}

TEST(Coequalizer, DifferentEndsAreNotEquivalent) {
  const auto m = terminal_sym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  const auto a = l.identity(power(mo, 1));
  const auto b = l.hom(power(mo, 2), power(mo, 1)).front();
  EXPECT_FALSE(coeq_equiv(l, a, b));
}

TEST(Coequalizer, LegsAndDescent) {
  const auto report = check_coequalizer(L(terminal_sym(3)), 2);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_TRUE(check_coequalizer(L(from_symmetric(two_object_multicat(), es(2))), 2).ok());
}

TEST(FreeConstruction, SymmetricHomCountsAreFunctions) {
  const auto m = terminal_sym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  for (std::size_t a = 0; a <= 3; ++a) {
    for (std::size_t b = 0; b <= 3; ++b) {
      EXPECT_EQ(l.hom(power(mo, a), power(mo, b)).size(), count_functions(a, b)) << a << " -> " << b;
    }
  }
}

TEST(FreeConstruction, NonSymmetricHomCountsAreCompositions) {
  const auto m = terminal_nonsym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  for (std::size_t a = 0; a <= 3; ++a) {
    for (std::size_t b = 0; b <= 3; ++b) {
      EXPECT_EQ(l.hom(power(mo, a), power(mo, b)).size(), count_compositions(a, b)) << a << " -> " << b;
    }
  }
}

TEST(FreeConstruction, EmptyHomIsIdentity) {
  const auto m = terminal_sym(2);
  const auto l = L(m);
  const auto empty = power(m.monad(), 0);
  const auto hom = l.hom(empty, empty);
  ASSERT_EQ(hom.size(), 1u);
  EXPECT_EQ(hom.front(), l.identity(empty));
}

TEST(FreeConstruction, AlgebraLaws) {
  const auto report = validate_algebra(L(terminal_sym(2)), 2);
  EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(FreeConstruction, ConcurrentClosuresAgree) {
  const auto m = terminal_sym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  std::vector<std::size_t> sizes(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < sizes.size(); ++t) {
    threads.emplace_back([&, t] { sizes[t] = l.hom(power(mo, 3), power(mo, 2)).size(); });
  }
  for (auto& th : threads) th.join();
  for (auto s : sizes) EXPECT_EQ(s, 8u);
}

TEST(Unit, MapChecklistPasses) {
  for (const auto& m : {terminal_sym(3), from_symmetric(two_object_multicat(), es(2))}) {
    const auto report = check_unit(L(m), m, 3);
    EXPECT_TRUE(report.ok()) << report.summary();
  }
  const auto ns = terminal_nonsym(3);
  EXPECT_TRUE(check_unit(L(ns), ns, 3).ok());
}

TEST(Unit, BinaryOperationUnfolds) {
  const auto m = terminal_sym(3);
  const auto l = L(m);
  const auto& mo = m.monad();
  const MorId b = *m.find_morphism("m2");
  const auto u = unit_morphism(l, m, b);
  EXPECT_EQ(u.arrow.phi, mo.eta(Degree::object, b));
  EXPECT_EQ(u.arrow.sigma, mo.identity(m.source(b)));
  EXPECT_EQ(u.decomposition.arity, 2u);
}

TEST(Unit, IdentitiesGoToIdentities) {
  const auto m = terminal_sym(3);
  const auto l = L(m);
  const Underlying<LAlg<FinMulticat>> u(l);
  const auto a = ObjId{0};
  EXPECT_EQ(unit_morphism(l, m, m.identity(a)), u.identity(m.monad().eta(Degree::object, a)));
}

TEST(Unit, HatLevelFailsOnlyAtPresheaf) {
  const auto m = terminal_sym(3);
  const auto report = check_unit(hat_L(m), m, 3);
  for (const auto& c : report.checks()) {
    if (c.name() == "map.presheaf") {
      EXPECT_EQ(c.status(), Status::fail);
    } else {
      EXPECT_EQ(c.status(), Status::pass) << c.name();
    }
  }
  const auto ns = terminal_nonsym(3);
  EXPECT_TRUE(check_unit(hat_L(ns), ns, 3).ok());
}

TEST(Unit, HatWitness) {
  EXPECT_FALSE(witness_hat_unit_failure(terminal_nonsym(3), 3).has_value());
  const auto m = terminal_sym(3);
  const auto w = witness_hat_unit_failure(m, 3);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(m.describe(w->f), "m2");
  EXPECT_TRUE(w->agree_in_L);
  EXPECT_FALSE(w->description.empty());
}

TEST(Counit, OnObjectsIsSum) {
  const auto mo = es(3);
  const Counit counit(sum_algebra(mo));
  EXPECT_EQ(counit.on_object(mo.make(Degree::object, 2, 0, std::vector<std::size_t>{1, 1})), 0u);
  EXPECT_EQ(counit.on_object(mo.make(Degree::object, 3, 0, std::vector<std::size_t>{1, 1, 1})), 1u);
}

TEST(Counit, FunctorAlgebraMapAndClasses) {
  const Counit counit(sum_algebra(es(3)));
  const auto report = check_counit(counit, 2);
  EXPECT_TRUE(report.ok()) << report.summary();
  const Counit free(FreeAlgebra(ass(3), cyclic_group_category(2)));
  const auto free_report = check_counit(free, 2);
  EXPECT_TRUE(free_report.ok()) << free_report.summary();
}

TEST(Triangles, StandardPairs) {
  {
    const auto m = terminal_nonsym(3);
    const auto report = check_triangles(m, FreeAlgebra(m.monad(), cyclic_group_category(2)), 3);
    EXPECT_TRUE(report.ok()) << report.summary();
  }
  {
    const auto m = terminal_sym(3);
    const auto report = check_triangles(m, sum_algebra(m.monad()), 3);
    EXPECT_TRUE(report.ok()) << report.summary();
  }
}

TEST(Triangles, DroppedCanonicalizationIsCaught) {
  const Monad faulty(barratt_eccles(3), Monad::Fault::mu_skips_canonicalization);
  const auto m = encode_classical(terminal_multicat(3, true), faulty);
  const auto report = check_triangles(m, FreeAlgebra(faulty, cyclic_group_category(2)), 2);
  const Check* first = report.find("triangle.underlying");
  ASSERT_NE(first, nullptr);
  EXPECT_EQ(first->status(), Status::fail);
  EXPECT_FALSE(first->witnesses().empty());
}

}  // namespace
}  // namespace gmcat
