#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gmcat/finset.hpp"
#include "gmcat/report.hpp"

namespace gmcat {

// Small category with a fully tabulated composition. compose(g, f) = g o f is
// stored exactly for the pairs with source(g) == target(f).
struct FinCategory {
  FinSet objects;
  FinSet morphisms;
  FinFn source;
  FinFn target;
  FinFn identity;
  std::unordered_map<std::uint64_t, std::size_t> composition;

  static std::uint64_t key(std::size_t g, std::size_t f) {
    return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(f);
  }
  std::optional<std::size_t> compose(std::size_t g, std::size_t f) const;
  // Throws StructuralError when the pair is not composable.
  std::size_t compose_or_throw(std::size_t g, std::size_t f) const;
  // Morphisms with the given target, in index order.
  std::vector<std::size_t> morphisms_into(std::size_t object) const;

  static FinCategory discrete(const FinSet& objects);
  static FinCategory terminal();
};

// Label-based builder; the result is independent of insertion order.
class CategoryBuilder {
 public:
  void add_object(std::string label);
  void add_morphism(std::string label, std::string source, std::string target);
  void set_identity(std::string object, std::string morphism);
  void add_composite(std::string g, std::string f, std::string result);
  // Adds an identity morphism "id(<object>)" for every object without one, and
  // the corresponding unit composites.
  void add_missing_identities();
  FinCategory build() const;

 private:
  std::vector<std::string> objects_;
  std::map<std::string, std::pair<std::string, std::string>> morphisms_;
  std::map<std::string, std::string> identities_;
  std::vector<std::tuple<std::string, std::string, std::string>> composites_;
};

struct CatFunctor {
  FinCategory src;
  FinCategory tgt;
  FinFn on_objects;
  FinFn on_morphisms;

  static CatFunctor identity(const FinCategory& category);
  friend bool operator==(const CatFunctor& a, const CatFunctor& b) {
    return a.on_objects == b.on_objects && a.on_morphisms == b.on_morphisms;
  }
};

// F after G.
CatFunctor compose(const CatFunctor& outer, const CatFunctor& inner);

// Presheaf: carrier over the objects via eps, with a right action x.c defined
// when eps(x) = target(c), landing over source(c).
struct Presheaf {
  FinCategory base;
  FinSet carrier;
  FinFn eps;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> action;

  std::size_t act(std::size_t x, std::size_t c) const;
};

// Presheaf with carrier the objects, eps = id and x.c = source(c).
Presheaf terminal_presheaf(const FinCategory& category);

// Composable strings c_1 .. c_n with source(c_i) = target(c_{i+1}).
// face_target drops the last morphism, face_source drops the first; for n = 1
// they are the target and source maps.
struct NerveLevel {
  std::size_t n = 0;
  FinSet simplices;
  std::vector<std::vector<std::size_t>> strings;
  std::optional<FinFn> face_target;
  std::optional<FinFn> face_source;
};

Report validate_category(const FinCategory& category);
Report validate_functor(const CatFunctor& functor);
Report validate_presheaf(const Presheaf& presheaf);

NerveLevel nerve_level(const FinCategory& category, std::size_t n);
// Functor applied to level-n strings (levels are built with nerve_level).
FinFn nerve_map(const CatFunctor& functor, std::size_t n);

bool is_target_cover(const CatFunctor& functor);
bool is_source_cover(const CatFunctor& functor);

struct Grothendieck {
  FinCategory category;
  CatFunctor projection;
};
Grothendieck grothendieck(const Presheaf& presheaf);

// Pulls a presheaf over F.tgt back to F.src along a target cover, using the
// given factorization of its structure map through F.src's objects.
Presheaf transport_presheaf(const CatFunctor& functor, const Presheaf& over_target,
                            const FinFn& eps_factor);
// Inverse of transport_presheaf: structure map F0 . eps, action through unique lifts.
Presheaf push_presheaf(const CatFunctor& functor, const Presheaf& over_source);

// Objects of F.src as a presheaf over F.tgt (F a target cover).
Presheaf objects_presheaf(const CatFunctor& cover);
// Morphisms of F.src as a presheaf over F.tgt via target and unique lifts.
Presheaf morphisms_presheaf(const CatFunctor& cover);

// A permutation group acting on a category by automorphism functors; functor g
// acts on the left, and functor (g h) = functor g after functor h.
struct CategoryAction {
  std::vector<Perm> group;
  std::vector<CatFunctor> functors;
};

Report validate_category_action(const CategoryAction& action, bool require_free);
FinCategory quotient_category(const FinCategory& category, const CategoryAction& action);
// Induced functor between quotients of an equivariant functor.
CatFunctor quotient_functor(const CatFunctor& functor, const CategoryAction& on_src,
                            const CategoryAction& on_tgt);

}  // namespace gmcat
