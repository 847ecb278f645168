#include <gtest/gtest.h>

#include <chrono>

#include "gmcat/catoperad.hpp"

namespace gmcat {
namespace {

// Oracle: each letter i of the outer word is replaced by the i-th inner word,
// shifted past the letters of inner words 1..i-1.
std::vector<std::size_t> substitute(const std::vector<std::size_t>& outer,
                                    const std::vector<std::vector<std::size_t>>& inner) {
  std::vector<std::size_t> offset(inner.size() + 1, 0);
  for (std::size_t i = 0; i < inner.size(); ++i) offset[i + 1] = offset[i] + inner[i].size();
  std::vector<std::size_t> out;
  for (std::size_t letter : outer) {
    for (std::size_t x : inner[letter - 1]) out.push_back(x + offset[letter - 1]);
  }
  return out;
}

std::size_t object_of(const CatOperad& op, const Perm& word) {
  return op.level(word.arity()).category.objects.index_of(word.str());
}

TEST(BarrattEccles, LevelSizes) {
  auto op = barratt_eccles(4);
  EXPECT_EQ(op.level(3).category.objects.size(), 6u);
  EXPECT_EQ(op.level(3).category.morphisms.size(), 36u);
  EXPECT_EQ(op.level(4).category.morphisms.size(), 576u);
  for (std::size_t n : {0u, 1u}) {
    EXPECT_EQ(op.level(n).category.objects.size(), 1u);
    EXPECT_EQ(op.level(n).category.morphisms.size(), 1u);
  }
  EXPECT_THROW(op.level(5), TruncationError);
}

TEST(BarrattEccles, ObjectCompositionMatchesSubstitutionOracle) {
  auto op = barratt_eccles(4);
  std::size_t checked = 0;
  for (std::size_t k = 0; k <= 3; ++k) {
    for (const auto& outer : all_perms(k)) {
      // All splittings of at most 4 letters into k inner words.
      std::vector<std::size_t> sizes(k, 0);
      while (true) {
        std::size_t total = 0;
        for (auto s : sizes) total += s;
        if (total <= 4) {
          std::vector<std::vector<Perm>> choices;
          for (auto s : sizes) choices.push_back(all_perms(s));
          std::vector<std::size_t> pick(k, 0);
          while (true) {
            std::vector<Cell> cells;
            std::vector<std::vector<std::size_t>> words;
            for (std::size_t i = 0; i < k; ++i) {
              const Perm& w = choices[i][pick[i]];
              cells.push_back({w.arity(), object_of(op, w)});
              words.push_back(w.images());
            }
            Perm expected(substitute(outer.images(), words));
            std::size_t got = op.compose(Degree::object, {k, object_of(op, outer)}, cells);
            EXPECT_EQ(op.level(total).category.objects.label(got), expected.str());
            ++checked;
            std::size_t i = 0;
            for (; i < k; ++i) {
              if (++pick[i] < choices[i].size()) break;
              pick[i] = 0;
            }
            if (i == k) break;
          }
        }
        std::size_t i = 0;
        for (; i < k; ++i) {
          if (++sizes[i] <= 4) break;
          sizes[i] = 0;
        }
        if (i == k) break;
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(BarrattEccles, ValidAndSigmaFree) {
  auto start = std::chrono::steady_clock::now();
  auto op = barratt_eccles(4);
  Report r = validate_operad(op);
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_TRUE(is_sigma_free(op));
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(10));
}

TEST(BarrattEccles, SimplicialDegreesAreSetOperads) {
  auto op = barratt_eccles(3);
  for (Degree d : {Degree::object, Degree::morphism}) {
    Report r = validate_operad(simplicial_degree(op, d));
    EXPECT_TRUE(r.ok()) << r.summary();
  }
}

TEST(Associativity, LevelsAreDiscrete) {
  auto op = associativity_operad(4);
  EXPECT_EQ(op.level(2).category.objects.size(), 2u);
  EXPECT_EQ(op.level(2).category.morphisms.size(), 2u);
  const Cell unit{1, op.unit()};
  std::vector<Cell> units{unit, unit};
  const std::size_t swap = object_of(op, Perm({2, 1}));
  EXPECT_EQ(op.compose(Degree::object, {2, swap}, units), swap);
}

TEST(Associativity, ValidAndSigmaFree) {
  auto op = associativity_operad(4);
  Report r = validate_operad(op);
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_TRUE(is_sigma_free(op));
}

TEST(Associativity, CorruptedCompositionIsReportedWithTuple) {
  auto op = associativity_operad(3);
  const std::size_t swap = object_of(op, Perm({2, 1}));
  const Cell unit{1, op.unit()};
  const Cell pair{2, 0};
  auto bad = op.with_composition_override(Degree::object, {2, swap}, {pair, unit}, 0);
  Report r = validate_operad(bad);
  EXPECT_FALSE(r.ok());
  bool named = false;
  for (const auto& v : r.violations()) named = named || v.find("gamma([2,1]; [1,2], [1])") != std::string::npos;
  EXPECT_TRUE(named) << r.summary();
}

TEST(ValidateOperad, ReducedAndExhaustiveModesAgree) {
  OperadCheckOptions exhaustive{true};
  auto es = barratt_eccles(3);
  EXPECT_TRUE(validate_operad(es, exhaustive).ok());
  auto ass = associativity_operad(3);
  const std::size_t swap = object_of(ass, Perm({2, 1}));
  const Cell unit{1, ass.unit()};
  // Corrupt a tuple whose outer and inner cells are orbit representatives, and one whose are not.
  auto bad_rep = ass.with_composition_override(Degree::object, {2, 0}, {unit, unit}, swap);
  auto bad_moved = ass.with_composition_override(Degree::object, {2, swap}, {{2, 0}, unit}, 0);
  for (const auto* bad : {&bad_rep, &bad_moved}) {
    EXPECT_FALSE(validate_operad(*bad).ok());
    EXPECT_FALSE(validate_operad(*bad, exhaustive).ok());
  }
  // A morphism-level corruption in the discrete operad.
  auto bad_mor = es.with_composition_override(Degree::morphism, {2, 1}, {unit, unit}, 0);
  EXPECT_FALSE(validate_operad(bad_mor).ok());
}

TEST(Commutative, AxiomsHoldButNotSigmaFree) {
  auto op = commutative_operad(4);
  EXPECT_TRUE(validate_operad(op).ok());
  EXPECT_FALSE(is_sigma_free(op));
  auto w = sigma_freeness_witness(op);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->arity, 2u);
  EXPECT_EQ(w->element, Perm({2, 1}));
  EXPECT_EQ(w->cell, "*");
}

TEST(LevelAction, FreeOnBothDegrees) {
  auto op = barratt_eccles(3);
  for (Degree d : {Degree::object, Degree::morphism}) {
    EXPECT_TRUE(verify_free(level_action(op, 3, d, false)));
  }
  Report r = validate_category_action(level_category_action(op, 3), true);
  EXPECT_TRUE(r.ok()) << r.summary();
}

}  // namespace
}  // namespace gmcat
