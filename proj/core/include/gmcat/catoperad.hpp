#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmcat/fincat.hpp"
#include "gmcat/finset.hpp"
#include "gmcat/report.hpp"

namespace gmcat {

// Simplicial degree of an operad element: an object or a morphism of its level.
enum class Degree : unsigned char { object = 0, morphism = 1 };

std::string_view to_string(Degree degree);

// An element of some level: arity n and an object or morphism index in level n.
struct Cell {
  std::size_t arity = 0;
  std::size_t id = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Level n of a Cat-operad: the category with its right Sigma_n action by functors.
// group lists Sigma_n in lexicographic order, so group[0] is the identity.
struct OperadLevel {
  FinCategory category;
  std::vector<Perm> group;
  std::vector<std::size_t> object_action;    // [cell * |G| + g] = cell . g
  std::vector<std::size_t> morphism_action;  // [cell * |G| + g] = cell . g

  std::size_t cells(Degree degree) const {
    return degree == Degree::object ? category.objects.size() : category.morphisms.size();
  }
  const FinSet& cell_set(Degree degree) const {
    return degree == Degree::object ? category.objects : category.morphisms;
  }
  std::size_t act(Degree degree, std::size_t cell, std::size_t g) const {
    const auto& table = degree == Degree::object ? object_action : morphism_action;
    return table[cell * group.size() + g];
  }
};

// gamma(outer; inner_1, .., inner_k) at a fixed degree; returns a cell of level sum(arity).
using ComposeFn = std::function<std::size_t(Degree, const Cell& outer, std::span<const Cell> inner)>;

struct CompositionEntry {
  Degree degree;
  Cell outer;
  std::vector<Cell> inner;
  std::size_t result;
};

// Operad in finite categories truncated at max_level. Immutable; compose is reentrant.
class CatOperad {
 public:
  CatOperad(std::string name, std::vector<OperadLevel> levels, std::size_t unit, ComposeFn compose);

  // Composition given as a table; missing tuples raise StructuralError on use.
  static CatOperad tabulated(std::string name, std::vector<OperadLevel> levels, std::size_t unit,
                             const std::vector<CompositionEntry>& entries);

  const std::string& name() const { return name_; }
  std::size_t max_level() const { return levels_->size() - 1; }
  const OperadLevel& level(std::size_t n) const;
  // Unit object of level 1.
  std::size_t unit() const { return unit_; }
  std::size_t unit_cell(Degree degree) const;

  // Checks arities and truncation (TruncationError) before evaluating.
  std::size_t compose(Degree degree, const Cell& outer, std::span<const Cell> inner) const;
  std::size_t act(Degree degree, std::size_t arity, std::size_t cell, std::size_t g) const {
    return level(arity).act(degree, cell, g);
  }
  std::string label(Degree degree, const Cell& cell) const {
    return level(cell.arity).cell_set(degree).label(cell.id);
  }

  // Copy whose composition returns `result` on exactly one tuple.
  CatOperad with_composition_override(Degree degree, Cell outer, std::vector<Cell> inner,
                                      std::size_t result) const;

 private:
  std::string name_;
  std::shared_ptr<const std::vector<OperadLevel>> levels_;
  std::size_t unit_;
  ComposeFn compose_;
};

// Words (permutations) as objects, one morphism t <- s per pair of words.
CatOperad barratt_eccles(std::size_t max_level);
// Words as objects, identities only.
CatOperad associativity_operad(std::size_t max_level);
// Every level terminal; not Sigma-free from level 2 on.
CatOperad commutative_operad(std::size_t max_level);

// Word and morphism labels used by the builtins: "[2,1,3]" and "[1,2,3]<-[2,1,3]".
Perm parse_word(std::string_view label);
std::pair<Perm, Perm> parse_word_morphism(std::string_view label);

struct OperadCheckOptions {
  // Ranges over every composable tuple instead of orbit representatives. Both
  // modes decide the same laws; the reduced one relies on the action laws, which
  // are always checked on every cell.
  bool exhaustive = false;
};

Report validate_operad(const CatOperad& op, const OperadCheckOptions& options = {});

struct FreenessWitness {
  std::size_t arity;
  Degree degree;
  Perm element;
  std::string cell;
};
std::optional<FreenessWitness> sigma_freeness_witness(const CatOperad& op);
bool is_sigma_free(const CatOperad& op);

// Level n action as a left group action (g . d = d . g^-1) on objects or morphisms.
GroupAction level_action(const CatOperad& op, std::size_t arity, Degree degree, bool require_free);
// Level n action as automorphism functors (left form, as above).
CategoryAction level_category_action(const CatOperad& op, std::size_t arity);

// Set operad of objects (degree object) or of morphisms (degree morphism), each
// level presented as a discrete category.
CatOperad simplicial_degree(const CatOperad& op, Degree degree);

}  // namespace gmcat
