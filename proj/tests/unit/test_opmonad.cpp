#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "gmcat/opmonad.hpp"
#include "random_covers.hpp"

namespace gmcat {
namespace {

using Elem = DElem<std::size_t>;

std::vector<std::size_t> carrier(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Free-monoid oracle for D_0 of a word operad: [w; xs] reads xs in the order of w.
std::vector<std::size_t> as_list(const Monad& m, const Elem& e) {
  Perm w = parse_word(m.operad().label(Degree::object, {e.arity, e.cell}));
  std::vector<std::size_t> out;
  for (std::size_t p = 1; p <= e.arity; ++p) out.push_back(e.xs[w(p) - 1]);
  return out;
}

// Automorphisms of an arity-n object of D(*) as permutations: t <- s gives s^-1 t.
Perm as_perm(const Monad& m, const Elem& e) {
  auto [t, s] = parse_word_morphism(m.operad().label(Degree::morphism, {e.arity, e.cell}));
  return s.inverse() * t;
}

class WordMonads : public ::testing::TestWithParam<int> {
 protected:
  Monad monad() const { return GetParam() == 0 ? Monad(barratt_eccles(4)) : Monad(associativity_operad(4)); }
};

TEST_P(WordMonads, EtaIsArityOneUnit) {
  Monad m = monad();
  for (Degree d : {Degree::object, Degree::morphism}) {
    Elem e = m.eta(d, std::size_t{7});
    EXPECT_EQ(e.arity, 1u);
    EXPECT_EQ(e.cell, m.operad().unit_cell(d));
    EXPECT_EQ(e.xs, std::vector<std::size_t>{7});
  }
}

TEST_P(WordMonads, MuFlattensLists) {
  Monad m = monad();
  Elem a = m.make(Degree::object, 1, 0, std::vector<std::size_t>{0});
  Elem bc = m.make(Degree::object, 2, 0, std::vector<std::size_t>{1, 2});
  auto nested = m.make(Degree::object, 2, 0, std::vector<Elem>{a, bc});
  EXPECT_EQ(as_list(m, m.mu(nested)), (std::vector<std::size_t>{0, 1, 2}));
  // Every nested element: mu is concatenation of the inner lists in outer order.
  const auto inner = m.elements_up_to(Degree::object, carrier(2), 3);
  for (const auto& big : nested_elements(m, Degree::object, inner, 3)) {
    std::vector<std::size_t> expected;
    Perm w = parse_word(m.operad().label(Degree::object, {big.arity, big.cell}));
    for (std::size_t p = 1; p <= big.arity; ++p) {
      auto part = as_list(m, big.xs[w(p) - 1]);
      expected.insert(expected.end(), part.begin(), part.end());
    }
    EXPECT_EQ(as_list(m, m.mu(big)), expected);
  }
}

TEST_P(WordMonads, MuBeyondTruncationThrows) {
  Monad m = monad();
  Elem three = m.make(Degree::object, 3, 0, std::vector<std::size_t>{0, 0, 0});
  auto nested = m.make(Degree::object, 2, 0, std::vector<Elem>{three, three});
  EXPECT_THROW(m.mu(nested), TruncationError);
}

TEST_P(WordMonads, MonadLawsExhaustive) {
  Monad m = monad();
  for (Degree d : {Degree::object, Degree::morphism}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      const auto xs = m.elements_up_to(d, carrier(n), 3);
      for (const auto& e : xs) {
        EXPECT_EQ(m.mu(m.eta(d, e)), e);
        EXPECT_EQ(m.mu(m.map(e, [&](std::size_t x) { return m.eta(d, x); })), e);
      }
      if (n > (d == Degree::object ? 2u : 1u)) continue;
      const auto twice = nested_elements(m, d, xs, 3);
      for (const auto& big : nested_elements(m, d, twice, 3)) {
        std::size_t leaves = 0;
        for (const auto& mid : big.xs) {
          for (const auto& e : mid.xs) leaves += e.arity;
        }
        if (leaves > 3) continue;
        auto flat_outer = m.mu(m.mu(big));
        auto flat_inner = m.mu(m.map(big, [&](const DElem<Elem>& e) { return m.mu(e); }));
        EXPECT_EQ(flat_outer, flat_inner);
      }
    }
  }
}

TEST_P(WordMonads, CanonicalFormIsConstantOnOrbitsAndCountsOrbits) {
  Monad m = monad();
  for (Degree d : {Degree::object, Degree::morphism}) {
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto& lvl = m.operad().level(n);
      const std::size_t x_size = 2;
      std::size_t power = 1;
      for (std::size_t i = 0; i < n; ++i) power *= x_size;
      auto all = m.elements(d, carrier(x_size), n);
      EXPECT_EQ(all.size(), lvl.cells(d) / lvl.group.size() * power);
      EXPECT_EQ(std::set<Elem>(all.begin(), all.end()).size(), all.size());
      for (const auto& e : all) {
        for (std::size_t g = 0; g < lvl.group.size(); ++g) {
          EXPECT_EQ(m.make(d, n, m.operad().act(d, n, e.cell, g), m.permute_coords(n, g, e.xs)), e);
        }
      }
    }
  }
}

TEST_P(WordMonads, CategoryObjectLaws) {
  Monad m = monad();
  const auto objects = m.elements_up_to(Degree::object, carrier(2), 3);
  for (const auto& a : objects) {
    EXPECT_EQ(m.source(m.identity(a)), a);
    EXPECT_EQ(m.target(m.identity(a)), a);
  }
  const auto morphisms = m.elements_up_to(Degree::morphism, carrier(2), 3);
  std::map<Elem, std::vector<Elem>> into;
  for (const auto& f : morphisms) into[m.target(f)].push_back(f);
  for (const auto& f : morphisms) {
    EXPECT_EQ(m.compose(m.identity(m.target(f)), f), f);
    EXPECT_EQ(m.compose(f, m.identity(m.source(f))), f);
    for (const auto& g : into[m.source(f)]) {
      const Elem fg = m.compose(f, g);
      EXPECT_EQ(m.source(fg), m.source(g));
      EXPECT_EQ(m.target(fg), m.target(f));
      for (const auto& h : into[m.source(g)]) EXPECT_EQ(m.compose(fg, h), m.compose(f, m.compose(g, h)));
    }
  }
}

TEST_P(WordMonads, StructureMapsAreMonadMaps) {
  Monad m = monad();
  auto source = [&](const Elem& e) { return m.source(e); };
  auto target = [&](const Elem& e) { return m.target(e); };
  auto ident = [&](const Elem& e) { return m.identity(e); };
  const auto mors = m.elements_up_to(Degree::morphism, carrier(2), 3);
  for (const auto& big : nested_elements(m, Degree::morphism, mors, 3)) {
    EXPECT_EQ(m.source(m.mu(big)), m.mu(m.source(m.map(big, source))));
    EXPECT_EQ(m.target(m.mu(big)), m.mu(m.target(m.map(big, target))));
  }
  const auto objs = m.elements_up_to(Degree::object, carrier(2), 3);
  for (const auto& big : nested_elements(m, Degree::object, objs, 3)) {
    EXPECT_EQ(m.identity(m.mu(big)), m.mu(m.identity(m.map(big, ident))));
  }
  for (std::size_t x = 0; x < 3; ++x) {
    EXPECT_EQ(m.source(m.eta(Degree::morphism, x)), m.eta(Degree::object, x));
    EXPECT_EQ(m.identity(m.eta(Degree::object, x)), m.eta(Degree::morphism, x));
  }
  // Naturality in X for a collapsing map.
  auto collapse = [](std::size_t) { return std::size_t{0}; };
  for (const auto& f : mors) {
    EXPECT_EQ(m.map(m.source(f), collapse), m.source(m.map(f, collapse)));
    EXPECT_EQ(m.map(m.target(f), collapse), m.target(m.map(f, collapse)));
  }
}

TEST_P(WordMonads, MapIdentityAndCollapse) {
  Monad m = monad();
  for (const auto& e : m.elements_up_to(Degree::object, carrier(3), 3)) {
    EXPECT_EQ(m.map(e, [](std::size_t x) { return x; }), e);
    auto c = m.map(e, [](std::size_t) { return std::size_t{5}; });
    EXPECT_EQ(c.xs, std::vector<std::size_t>(e.arity, 5));
    EXPECT_EQ(m.map(m.eta(Degree::object, std::size_t{1}), [](std::size_t x) { return x + 1; }),
              m.eta(Degree::object, std::size_t{2}));
  }
}

TEST_P(WordMonads, CartesianChecksPass) {
  Monad m = monad();
  CartesianOptions opts;
  opts.squares = 50;
  for (Degree d : {Degree::object, Degree::morphism}) {
    Report r = check_cartesian(m, d, opts);
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_EQ(r.find("pullback_preservation")->instances(), 50u);
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, WordMonads, ::testing::Values(0, 1),
                         [](const auto& info) { return info.param == 0 ? "BarrattEccles" : "Associativity"; });

TEST(Monad, CommutativeOperadIsRejected) { EXPECT_THROW(Monad(commutative_operad(4)), FreenessError); }

TEST(Monad, CommutativeOperadBreaksMuNaturality) {
  Monad m = Monad::without_freeness_check(commutative_operad(4));
  CartesianOptions opts;
  opts.squares = 10;
  Report r = check_cartesian(m, Degree::object, opts);
  const Check* mu = r.find("mu_naturality");
  ASSERT_NE(mu, nullptr);
  EXPECT_EQ(mu->status(), Status::fail);
  EXPECT_FALSE(mu->witnesses().empty());
}

TEST(Monad, AutomorphismsOverPointFormSymmetricGroup) {
  Monad m(barratt_eccles(4));
  Elem three = m.make(Degree::object, 3, 0, std::vector<std::size_t>{0, 0, 0});
  auto autos = m.morphisms_between(three, three);
  ASSERT_EQ(autos.size(), 6u);
  std::set<Perm> images;
  for (const auto& f : autos) images.insert(as_perm(m, f));
  EXPECT_EQ(images.size(), 6u);
  for (const auto& f : autos) {
    for (const auto& g : autos) EXPECT_EQ(as_perm(m, m.compose(g, f)), as_perm(m, f) * as_perm(m, g));
  }
  EXPECT_TRUE(as_perm(m, m.identity(three)).is_identity());
  // Only identities in the discrete operad.
  Monad ass(associativity_operad(4));
  Elem a3 = ass.make(Degree::object, 3, 0, std::vector<std::size_t>{0, 0, 0});
  EXPECT_EQ(ass.morphisms_between(a3, a3).size(), 1u);
}

TEST(Monad, NonComposablePairIsRejected) {
  Monad m(barratt_eccles(3));
  Elem ab = m.make(Degree::object, 2, 0, std::vector<std::size_t>{0, 1});
  Elem aa = m.make(Degree::object, 2, 0, std::vector<std::size_t>{0, 0});
  EXPECT_THROW(m.compose(m.identity(ab), m.identity(aa)), StructuralError);
}

// A small carrier with source structure: morphisms of a toy multicategory on
// objects {0, 1}. 0 = id_0, 1 = id_1, 2: (0, 1) -> 0, 3: () -> 1.
struct Toy {
  const Monad& m;
  std::size_t target(std::size_t f) const { return f == 0 || f == 2 ? 0 : 1; }
  Elem source(std::size_t f) const {
    switch (f) {
      case 0: return m.eta(Degree::object, std::size_t{0});
      case 1: return m.eta(Degree::object, std::size_t{1});
      case 2: return m.make(Degree::object, 2, 0, std::vector<std::size_t>{0, 1});
      default: return m.make(Degree::object, 0, 0, std::vector<std::size_t>{});
    }
  }
};

TEST(Theta, UnarySourceAndComposites) {
  Monad m(barratt_eccles(4));
  Toy toy{m};
  auto src = [&](std::size_t f) { return toy.source(f); };
  // Arity one with a unary source is the identity on that source.
  Elem e = m.eta(Degree::morphism, std::size_t{0});
  EXPECT_EQ(theta(m, e, src), m.identity(toy.source(0)));
  // Identities of lists of morphisms go to identities of the concatenated sources.
  for (const auto& list : m.elements_up_to(Degree::object, carrier(4), 2)) {
    Elem sources = m.mu(m.map(list, src));
    EXPECT_EQ(theta(m, m.identity(list), src), m.identity(sources));
  }
  // theta of a composite is the composite of thetas.
  const auto mors = m.elements_up_to(Degree::morphism, carrier(4), 2);
  for (const auto& f : mors) {
    for (const auto& g : mors) {
      if (m.source(g) != m.target(f)) continue;
      EXPECT_EQ(theta(m, m.compose(g, f), src), m.compose(theta(m, g, src), theta(m, f, src)));
    }
  }
}

TEST(Chi, IdentityLegsPassThrough) {
  Monad m(barratt_eccles(4));
  Toy toy{m};
  auto src = [&](std::size_t f) { return toy.source(f); };
  auto tgt = [&](std::size_t f) { return toy.target(f); };
  // Identity permutation data: the list is unchanged and the right leg is an identity.
  for (const auto& phi : m.elements_up_to(Degree::object, carrier(4), 2)) {
    Elem sigma = m.identity(m.map(phi, tgt));
    auto [moved, rest] = chi(m, sigma, phi, tgt, src);
    EXPECT_EQ(moved, phi);
    EXPECT_EQ(rest, m.identity(m.mu(m.map(phi, src))));
  }
  // A list of identity morphisms: the permutation data passes through.
  auto unit_of = [](std::size_t a) { return a; };
  for (const auto& sigma : m.elements_up_to(Degree::morphism, carrier(2), 3)) {
    Elem phi = m.map(m.source(sigma), unit_of);
    auto [moved, rest] = chi(m, sigma, phi, tgt, src);
    EXPECT_EQ(moved, m.map(m.target(sigma), unit_of));
    EXPECT_EQ(rest, sigma);
  }
}

TEST(Chi, MismatchedTargetsAreAnInvariantViolation) {
  Monad m(barratt_eccles(3));
  Toy toy{m};
  auto src = [&](std::size_t f) { return toy.source(f); };
  auto tgt = [&](std::size_t f) { return toy.target(f); };
  Elem sigma = m.identity(m.make(Degree::object, 1, 0, std::vector<std::size_t>{1}));
  Elem phi = m.make(Degree::object, 1, 0, std::vector<std::size_t>{2});
  EXPECT_THROW(chi(m, sigma, phi, tgt, src), InvariantViolation);
}

TEST(Chi, SwapOnBinaryList) {
  Monad m(associativity_operad(3));
  Toy toy{m};
  auto src = [&](std::size_t f) { return toy.source(f); };
  auto tgt = [&](std::size_t f) { return toy.target(f); };
  // Discrete operad: only identities, so chi is (phi, I_D(theta-sources)).
  Elem phi = m.make(Degree::object, 2, 0, std::vector<std::size_t>{2, 3});
  Elem sigma = m.identity(m.map(phi, tgt));
  auto [moved, rest] = chi(m, sigma, phi, tgt, src);
  EXPECT_EQ(moved, phi);
  EXPECT_EQ(as_list(m, m.source(rest)), (std::vector<std::size_t>{0, 1}));
}

TEST(Covers, DiscreteAndFoldCoversArePreserved) {
  Monad m(barratt_eccles(3));
  FinCategory m1 = FinCategory::discrete(FinSet({"f", "g", "h"}));
  FinCategory m0 = FinCategory::discrete(FinSet({"a", "b"}));
  CatFunctor target{m1, m0, FinFn(m1.objects, m0.objects, {0, 0, 1}), FinFn(m1.morphisms, m0.morphisms, {0, 0, 1})};
  EXPECT_TRUE(check_preserves_cover(m, target, 3).ok());
  FinCategory point = FinCategory::terminal();
  CatFunctor eps{m0, point, FinFn(m0.objects, point.objects, {0, 0}), FinFn(m0.morphisms, point.morphisms, {0, 0})};
  Report r = check_preserves_cover(m, eps, 3);
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_GT(r.find("target_cover")->instances(), 0u);
  FinCategory es2 = barratt_eccles(2).level(2).category;
  EXPECT_TRUE(check_preserves_cover(m, CatFunctor::identity(es2), 2).ok());
  CatFunctor collapse{es2, point, FinFn(es2.objects, point.objects, {0, 0}),
                      FinFn(es2.morphisms, point.morphisms, {0, 0, 0, 0})};
  EXPECT_THROW(check_preserves_cover(m, collapse, 2), PreconditionError);
}

TEST(DerivedPresheaf, IsAPresheaf) {
  Monad m(barratt_eccles(3));
  FinCategory es2 = barratt_eccles(2).level(2).category;
  Presheaf p = derived_presheaf(m, terminal_presheaf(es2), 2);
  Report r = validate_presheaf(p);
  EXPECT_TRUE(r.ok()) << r.summary();
  FinCategory point = FinCategory::terminal();
  FinSet x({"p", "q"});
  Presheaf over_point{point, x, FinFn(x, point.objects, {0, 0}), {{{0, 0}, 0}, {{1, 0}, 1}}};
  Presheaf q = derived_presheaf(m, over_point, 3);
  EXPECT_TRUE(validate_presheaf(q).ok());
}

}  // namespace
}  // namespace gmcat

namespace gmcat {
namespace {

TEST(Covers, RandomElementProjectionsArePreserved) {
  std::mt19937_64 rng(11);
  const Monad m(barratt_eccles(2));
  for (int trial = 0; trial < 6; ++trial) {
    const auto cover = testing::random_cover(rng);
    ASSERT_TRUE(validate_functor(cover).ok());
    ASSERT_TRUE(is_target_cover(cover));
    const auto report = check_preserves_cover(m, cover, 2);
    EXPECT_TRUE(report.ok()) << report.summary();
  }
}

}  // namespace
}  // namespace gmcat
