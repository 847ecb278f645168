#include <gtest/gtest.h>

#include "gmcat/catoperad.hpp"
#include "gmcat/fincat.hpp"

namespace gmcat {
namespace {

FinCategory es2() { return barratt_eccles(2).level(2).category; }

// EΣ2 built by hand: two objects, one arrow for each ordered pair.
FinCategory es2_by_hand() {
  CategoryBuilder b;
  const std::vector<std::string> objs{"12", "21"};
  for (const auto& o : objs) b.add_object(o);
  for (const auto& t : objs) {
    for (const auto& s : objs) b.add_morphism(t + "<" + s, s, t);
  }
  for (const auto& o : objs) b.set_identity(o, o + "<" + o);
  for (const auto& u : objs) {
    for (const auto& t : objs) {
      for (const auto& s : objs) b.add_composite(u + "<" + t, t + "<" + s, u + "<" + s);
    }
  }
  return b.build();
}

// Disjoint union C + C with labels prefixed by copy number.
FinCategory two_copies(const FinCategory& c) {
  CategoryBuilder b;
  for (int k = 0; k < 2; ++k) {
    const std::string p = std::to_string(k) + ":";
    for (const auto& o : c.objects.labels()) b.add_object(p + o);
    for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
      b.add_morphism(p + c.morphisms.label(m), p + c.objects.label(c.source(m)), p + c.objects.label(c.target(m)));
    }
    for (std::size_t a = 0; a < c.objects.size(); ++a) b.set_identity(p + c.objects.label(a), p + c.morphisms.label(c.identity(a)));
    for (const auto& [key, r] : c.composition) {
      b.add_composite(p + c.morphisms.label(key >> 32), p + c.morphisms.label(key & 0xffffffffu), p + c.morphisms.label(r));
    }
  }
  return b.build();
}

// Functor on C + C applying f to each copy (f an endofunctor of C), or folding onto C.
CatFunctor copywise(const FinCategory& sum, const FinCategory& c, const CatFunctor& f, bool fold) {
  const FinCategory& tgt = fold ? c : sum;
  std::vector<std::size_t> objs, mors;
  auto split = [](const std::string& l) { return std::make_pair(l.substr(0, 2), l.substr(2)); };
  for (const auto& l : sum.objects.labels()) {
    auto [p, rest] = split(l);
    auto image = c.objects.label(f.on_objects(c.objects.index_of(rest)));
    objs.push_back(tgt.objects.index_of(fold ? image : p + image));
  }
  for (const auto& l : sum.morphisms.labels()) {
    auto [p, rest] = split(l);
    auto image = c.morphisms.label(f.on_morphisms(c.morphisms.index_of(rest)));
    mors.push_back(tgt.morphisms.index_of(fold ? image : p + image));
  }
  return {sum, tgt, FinFn(sum.objects, tgt.objects, objs), FinFn(sum.morphisms, tgt.morphisms, mors)};
}

TEST(ValidateCategory, TerminalIsValid) { EXPECT_TRUE(validate_category(FinCategory::terminal()).ok()); }

TEST(ValidateCategory, WrongUnitIsReportedWithObject) {
  FinCategory c = es2_by_hand();
  // Make 12<12 compose with 12<21 to the wrong arrow.
  const auto id = c.identity(c.objects.index_of("12"));
  const auto f = c.morphisms.index_of("12<21");
  c.composition[FinCategory::key(id, f)] = c.morphisms.index_of("21<21");
  Report r = validate_category(c);
  EXPECT_FALSE(r.ok());
  const Check* unit = r.find("composition.left_unit");
  ASSERT_NE(unit, nullptr);
  ASSERT_FALSE(unit->witnesses().empty());
  EXPECT_NE(unit->witnesses().front().find("12"), std::string::npos);
}

TEST(ValidateCategory, BarrattEcclesLevelTwoMatchesHandBuiltCopy) {
  FinCategory c = es2();
  EXPECT_TRUE(validate_category(c).ok());
  EXPECT_EQ(c.objects.size(), 2u);
  EXPECT_EQ(c.morphisms.size(), 4u);
  EXPECT_EQ(c.composition.size(), 8u);
  FinCategory hand = es2_by_hand();
  EXPECT_TRUE(validate_category(hand).ok());
  EXPECT_EQ(hand.composition.size(), c.composition.size());
}

TEST(Nerve, LowLevelsAndPairCount) {
  FinCategory c = es2();
  EXPECT_EQ(nerve_level(c, 0).simplices, c.objects);
  EXPECT_EQ(nerve_level(c, 1).simplices, c.morphisms);
  EXPECT_EQ(nerve_level(c, 2).simplices.size(), 8u);
  EXPECT_EQ(nerve_level(c, 3).simplices.size(), 16u);
}

TEST(Covers, IdentityAndCollapse) {
  FinCategory c = es2();
  EXPECT_TRUE(is_target_cover(CatFunctor::identity(c)));
  EXPECT_TRUE(is_source_cover(CatFunctor::identity(c)));
  FinCategory t = FinCategory::terminal();
  CatFunctor collapse{c, t, FinFn(c.objects, t.objects, {0, 0}), FinFn(c.morphisms, t.morphisms, {0, 0, 0, 0})};
  EXPECT_TRUE(validate_functor(collapse).ok());
  EXPECT_FALSE(is_target_cover(collapse));
  EXPECT_FALSE(is_source_cover(collapse));
}

TEST(Covers, NerveSquaresOfTargetCoversArePullbacks) {
  FinCategory c = es2();
  FinCategory sum = two_copies(c);
  CatFunctor fold = copywise(sum, c, CatFunctor::identity(c), true);
  ASSERT_TRUE(validate_functor(fold).ok());
  ASSERT_TRUE(is_target_cover(fold));
  for (std::size_t n = 1; n <= 3; ++n) {
    auto top = nerve_level(sum, n), bottom = nerve_level(c, n);
    // C'_n --F--> C_n over C'_(n-1) --F--> C_(n-1), vertical maps drop the last arrow.
    EXPECT_TRUE(is_pullback_square(nerve_map(fold, n), *top.face_target, *bottom.face_target,
                                   nerve_map(fold, n - 1)))
        << "n=" << n;
  }
}

TEST(Grothendieck, TerminalPresheafRecoversTheCategory) {
  FinCategory c = es2();
  auto g = grothendieck(terminal_presheaf(c));
  EXPECT_TRUE(validate_category(g.category).ok());
  EXPECT_EQ(g.category.objects.size(), c.objects.size());
  EXPECT_EQ(g.category.morphisms.size(), c.morphisms.size());
  // Projection is a bijection on morphisms.
  std::vector<std::size_t> images(g.projection.on_morphisms.table());
  std::sort(images.begin(), images.end());
  EXPECT_EQ(images, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_TRUE(is_target_cover(g.projection));
}

TEST(Grothendieck, OverTerminalIsDiscrete) {
  FinCategory t = FinCategory::terminal();
  FinSet x({"p", "q", "r"});
  Presheaf p{t, x, FinFn(x, t.objects, {0, 0, 0}), {}};
  for (std::size_t i = 0; i < 3; ++i) p.action[{i, 0}] = i;
  auto g = grothendieck(p);
  EXPECT_EQ(g.category.morphisms.size(), 3u);
  EXPECT_TRUE(is_target_cover(g.projection));
}

TEST(Grothendieck, FreeOrbitOverES2) {
  FinCategory c = es2();
  auto g = grothendieck(terminal_presheaf(c));
  EXPECT_EQ(g.category.objects.size(), 2u);
  EXPECT_EQ(g.category.morphisms.size(), 4u);
  // A presheaf over the fold cover: the objects of C + C.
  FinCategory sum = two_copies(c);
  Presheaf objs = objects_presheaf(copywise(sum, c, CatFunctor::identity(c), true));
  EXPECT_TRUE(validate_presheaf(objs).ok());
  auto h = grothendieck(objs);
  EXPECT_EQ(h.category.objects.size(), 4u);
  EXPECT_EQ(h.category.morphisms.size(), 8u);
  EXPECT_TRUE(is_target_cover(h.projection));
}

TEST(Transport, IdentityLeavesPresheafUnchanged) {
  FinCategory c = es2();
  Presheaf p = terminal_presheaf(c);
  Presheaf q = transport_presheaf(CatFunctor::identity(c), p, p.eps);
  EXPECT_EQ(q.action, p.action);
  EXPECT_EQ(q.eps, p.eps);
}

TEST(Transport, RoundTripAndValidity) {
  FinCategory c = es2();
  FinCategory sum = two_copies(c);
  CatFunctor fold = copywise(sum, c, CatFunctor::identity(c), true);
  Presheaf objs = objects_presheaf(fold);
  Presheaf morphs = morphisms_presheaf(fold);
  for (const Presheaf* p : {&objs, &morphs}) {
    ASSERT_TRUE(validate_presheaf(*p).ok());
    // Structure map over the objects of C + C: copy of the lifted object.
    std::vector<std::size_t> factor;
    for (std::size_t x = 0; x < p->carrier.size(); ++x) {
      factor.push_back(p == &objs ? x : sum.source(x));
    }
    FinFn eps_factor(p->carrier, sum.objects, factor);
    Presheaf up = transport_presheaf(fold, *p, eps_factor);
    EXPECT_TRUE(validate_presheaf(up).ok());
    Presheaf back = push_presheaf(fold, up);
    EXPECT_EQ(back.action, p->action);
    EXPECT_EQ(back.eps, p->eps);
  }
}

TEST(Transport, RejectsNonCoversAndBadFactorizations) {
  FinCategory c = es2();
  FinCategory t = FinCategory::terminal();
  CatFunctor collapse{c, t, FinFn(c.objects, t.objects, {0, 0}), FinFn(c.morphisms, t.morphisms, {0, 0, 0, 0})};
  Presheaf over_t = terminal_presheaf(t);
  EXPECT_THROW(transport_presheaf(collapse, over_t, FinFn(over_t.carrier, c.objects, {0})), PreconditionError);
  Presheaf p = terminal_presheaf(c);
  // Swapping the objects is not a factorization of eps = id.
  EXPECT_THROW(transport_presheaf(CatFunctor::identity(c), p, FinFn(c.objects, c.objects, {1, 0})), StructuralError);
}

TEST(Quotient, TrivialGroupGivesSameCategory) {
  FinCategory c = es2();
  CategoryAction trivial{{Perm::identity(2)}, {CatFunctor::identity(c)}};
  FinCategory q = quotient_category(c, trivial);
  EXPECT_EQ(q.objects, c.objects);
  EXPECT_EQ(q.morphisms, c.morphisms);
  EXPECT_TRUE(validate_category(q).ok());
}

TEST(Quotient, SigmaTwoOnES2) {
  auto op = barratt_eccles(2);
  FinCategory q = quotient_category(op.level(2).category, level_category_action(op, 2));
  EXPECT_EQ(q.objects.size(), 1u);
  EXPECT_EQ(q.morphisms.size(), 2u);
  EXPECT_TRUE(validate_category(q).ok());
}

TEST(Quotient, NonFreeActionIsRejected) {
  FinCategory t = FinCategory::terminal();
  CategoryAction fixed{all_perms(2), {CatFunctor::identity(t), CatFunctor::identity(t)}};
  EXPECT_THROW(quotient_category(t, fixed), FreenessError);
}

TEST(Quotient, QuotientOfCoverIsCover) {
  auto op = barratt_eccles(2);
  FinCategory c = op.level(2).category;
  CategoryAction on_c = level_category_action(op, 2);
  FinCategory sum = two_copies(c);
  CatFunctor fold = copywise(sum, c, CatFunctor::identity(c), true);
  CategoryAction on_sum{on_c.group, {}};
  for (const auto& f : on_c.functors) on_sum.functors.push_back(copywise(sum, c, f, false));
  ASSERT_TRUE(validate_category_action(on_sum, true).ok());
  CatFunctor q = quotient_functor(fold, on_sum, on_c);
  EXPECT_TRUE(validate_functor(q).ok());
  EXPECT_TRUE(is_target_cover(q));
  EXPECT_TRUE(is_source_cover(q));
}

}  // namespace
}  // namespace gmcat
