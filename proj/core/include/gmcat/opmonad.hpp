#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gmcat/catoperad.hpp"
#include "gmcat/fincat.hpp"
#include "gmcat/report.hpp"

namespace gmcat {

// Element [cell; xs] of D_j X = coprod_n (D_n)_j x_{Sigma_n} X^n, always stored in
// canonical form: cell is the minimum of its orbit and xs is permuted to match.
template <class X>
struct DElem {
  Degree degree = Degree::object;
  std::size_t arity = 0;
  std::size_t cell = 0;
  std::vector<X> xs;

  friend bool operator==(const DElem&, const DElem&) = default;
  friend auto operator<=>(const DElem&, const DElem&) = default;
};

template <class T>
struct is_delem : std::false_type {};
template <class X>
struct is_delem<DElem<X>> : std::true_type {};

// The monads D_0, D_1 of a Sigma-free Cat-operad, together with the category
// object maps S_D, T_D, I_D and gamma_D.
class Monad {
 public:
  enum class Fault { none, mu_skips_canonicalization };

  // Throws FreenessError naming a fixed point when the operad is not Sigma-free.
  explicit Monad(CatOperad operad, Fault fault = Fault::none);
  // Canonicalizes by brute force over Sigma_n; for negative controls only.
  static Monad without_freeness_check(CatOperad operad);

  const CatOperad& operad() const { return *operad_; }
  std::size_t max_arity() const { return operad_->max_level(); }
  bool free() const { return free_; }
  Fault fault() const { return fault_; }

  // Index of g o h, of g^-1, and the element g with from . g = to (same orbit).
  std::size_t multiply(std::size_t arity, std::size_t g, std::size_t h) const;
  std::size_t inverse(std::size_t arity, std::size_t g) const;
  std::size_t align(Degree degree, std::size_t arity, std::size_t from, std::size_t to) const;

  const std::vector<std::size_t>& orbit_representatives(Degree degree, std::size_t arity) const;
  // Morphism cells of level n whose target (source) is exactly the given object cell.
  const std::vector<std::size_t>& morphisms_with_target(std::size_t arity, std::size_t object) const;

  // Re-indexes coordinates along g: out[m] = xs[g(m)], so that [cell; xs] ~ [cell.g; out].
  template <class X>
  std::vector<X> permute_coords(std::size_t arity, std::size_t g, const std::vector<X>& xs) const {
    const Perm& p = operad_->level(arity).group[g];
    std::vector<X> out;
    out.reserve(arity);
    for (std::size_t m = 1; m <= arity; ++m) out.push_back(xs[p(m) - 1]);
    return out;
  }

  template <class X>
  DElem<X> make(Degree degree, std::size_t arity, std::size_t cell, std::vector<X> xs) const {
    check_shape(degree, arity, cell, xs.size());
    const auto& t = tables(arity);
    const auto d = static_cast<std::size_t>(degree);
    if (free_) {
      const std::size_t g = t.to_rep[d][cell];
      if (g == 0) return {degree, arity, cell, std::move(xs)};
      return {degree, arity, t.rep[d][cell], permute_coords(arity, g, xs)};
    }
    DElem<X> best{degree, arity, cell, xs};
    const std::size_t group = operad_->level(arity).group.size();
    for (std::size_t g = 1; g < group; ++g) {
      DElem<X> candidate{degree, arity, operad_->act(degree, arity, cell, g), permute_coords(arity, g, xs)};
      if (candidate < best) best = std::move(candidate);
    }
    return best;
  }

  template <class X>
  DElem<X> eta(Degree degree, X x) const {
    std::vector<X> xs;
    xs.push_back(std::move(x));
    return make(degree, 1, operad_->unit_cell(degree), std::move(xs));
  }

  template <class X>
  DElem<X> mu(const DElem<DElem<X>>& e) const {
    std::vector<Cell> inner;
    inner.reserve(e.arity);
    std::size_t total = 0;
    for (const auto& x : e.xs) {
      if (x.degree != e.degree) throw StructuralError("mu: inner and outer degrees differ");
      inner.push_back({x.arity, x.cell});
      total += x.arity;
    }
    if (total > max_arity()) {
      throw TruncationError("mu: total arity " + std::to_string(total) + " exceeds operad truncation " +
                            std::to_string(max_arity()));
    }
    const std::size_t cell = operad_->compose(e.degree, {e.arity, e.cell}, inner);
    std::vector<X> xs;
    xs.reserve(total);
    for (const auto& x : e.xs) xs.insert(xs.end(), x.xs.begin(), x.xs.end());
    auto out = make(e.degree, total, cell, std::move(xs));
    if (fault_ == Fault::mu_skips_canonicalization && total >= 2) {
      // an equivalent representative that is not the orbit minimum
      return {e.degree, total, operad_->act(e.degree, total, out.cell, 1), permute_coords(total, 1, out.xs)};
    }
    return out;
  }

  template <class X, class F>
  auto map(const DElem<X>& e, F&& f) const -> DElem<std::decay_t<std::invoke_result_t<F&, const X&>>> {
    using Y = std::decay_t<std::invoke_result_t<F&, const X&>>;
    std::vector<Y> ys;
    ys.reserve(e.xs.size());
    for (const auto& x : e.xs) ys.push_back(f(x));
    if (free_) return {e.degree, e.arity, e.cell, std::move(ys)};
    return make(e.degree, e.arity, e.cell, std::move(ys));
  }

  // S_D and T_D: D_1 X -> D_0 X.
  template <class X>
  DElem<X> source(const DElem<X>& e) const {
    expect_degree(e, Degree::morphism, "source");
    return make(Degree::object, e.arity, level_category(e.arity).source(e.cell), e.xs);
  }
  template <class X>
  DElem<X> target(const DElem<X>& e) const {
    expect_degree(e, Degree::morphism, "target");
    return make(Degree::object, e.arity, level_category(e.arity).target(e.cell), e.xs);
  }
  // I_D: D_0 X -> D_1 X.
  template <class X>
  DElem<X> identity(const DElem<X>& e) const {
    expect_degree(e, Degree::object, "identity");
    return make(Degree::morphism, e.arity, level_category(e.arity).identity(e.cell), e.xs);
  }

  // Coordinates of e re-expressed over another cell of the same orbit.
  template <class X>
  std::vector<X> coordinates_at(const DElem<X>& e, std::size_t cell) const {
    return permute_coords(e.arity, align(e.degree, e.arity, e.cell, cell), e.xs);
  }

  // g o f in D(C) for S(g) = T(f), with coordinates combined by component(x_g, x_f).
  template <class X, class F>
  DElem<X> compose_with(const DElem<X>& g, const DElem<X>& f, F&& component) const {
    expect_degree(g, Degree::morphism, "compose");
    expect_degree(f, Degree::morphism, "compose");
    if (g.arity != f.arity) throw StructuralError("compose: arities differ");
    const auto& cat = level_category(g.arity);
    const std::size_t rho = align(Degree::object, g.arity, cat.target(f.cell), cat.source(g.cell));
    const std::size_t f_cell = operad_->act(Degree::morphism, f.arity, f.cell, rho);
    const auto f_xs = permute_coords(f.arity, rho, f.xs);
    std::vector<X> xs;
    xs.reserve(g.arity);
    for (std::size_t i = 0; i < g.arity; ++i) xs.push_back(component(g.xs[i], f_xs[i]));
    return make(Degree::morphism, g.arity, cat.compose_or_throw(g.cell, f_cell), std::move(xs));
  }

  // gamma_D: composition in D(X^delta); requires S_D(g) = T_D(f).
  template <class X>
  DElem<X> compose(const DElem<X>& g, const DElem<X>& f) const {
    if (source(g) != target(f)) throw StructuralError("gamma_D: pair is not composable");
    return compose_with(g, f, [](const X& a, const X& b) {
      if (!(a == b)) throw InvariantViolation("gamma_D: coordinates disagree after alignment");
      return a;
    });
  }

  // All canonical elements of degree d and the given arity with coordinates in carrier.
  template <class X>
  std::vector<DElem<X>> elements(Degree degree, const std::vector<X>& carrier, std::size_t arity) const {
    std::vector<DElem<X>> out;
    std::vector<std::size_t> pick(arity, 0);
    const bool empty = arity > 0 && carrier.empty();
    for (std::size_t rep : orbit_representatives(degree, arity)) {
      if (empty) break;
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<X> xs;
        xs.reserve(arity);
        for (std::size_t i : pick) xs.push_back(carrier[i]);
        out.push_back(make(degree, arity, rep, std::move(xs)));
        std::size_t i = 0;
        for (; i < arity; ++i) {
          if (++pick[i] < carrier.size()) break;
          pick[i] = 0;
        }
        if (i == arity) break;
      }
    }
    if (!free_) {
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
  }

  template <class X>
  std::vector<DElem<X>> elements_up_to(Degree degree, const std::vector<X>& carrier, std::size_t bound) const {
    std::vector<DElem<X>> out;
    for (std::size_t n = 0; n <= std::min(bound, max_arity()); ++n) {
      auto level = elements(degree, carrier, n);
      out.insert(out.end(), level.begin(), level.end());
    }
    return out;
  }

  // Morphisms of D(X^delta) with the given target.
  template <class X>
  std::vector<DElem<X>> morphisms_into(const DElem<X>& object) const {
    expect_degree(object, Degree::object, "morphisms_into");
    std::vector<DElem<X>> out;
    for (std::size_t c : morphisms_with_target(object.arity, object.cell)) {
      out.push_back(make(Degree::morphism, object.arity, c, object.xs));
    }
    return out;
  }

  template <class X>
  std::vector<DElem<X>> morphisms_between(const DElem<X>& from, const DElem<X>& to) const {
    std::vector<DElem<X>> out;
    if (from.arity != to.arity) return out;
    for (auto& m : morphisms_into(to)) {
      if (source(m) == from) out.push_back(std::move(m));
    }
    return out;
  }

  template <class X, class Show>
  std::string describe(const DElem<X>& e, Show&& show) const {
    std::string out = "[" + operad_->label(e.degree, {e.arity, e.cell}) + ";";
    for (std::size_t i = 0; i < e.xs.size(); ++i) out += (i ? ", " : " ") + show(e.xs[i]);
    return out + "]";
  }

  const FinCategory& level_category(std::size_t arity) const { return operad_->level(arity).category; }

 private:
  struct LevelTables {
    std::vector<std::size_t> rep[2];
    std::vector<std::size_t> to_rep[2];
    std::vector<std::size_t> reps[2];
    std::vector<std::size_t> mult;
    std::vector<std::size_t> inv;
    std::vector<std::vector<std::size_t>> by_target;
  };

  Monad(CatOperad operad, bool free, Fault fault);
  const LevelTables& tables(std::size_t arity) const;
  void check_shape(Degree degree, std::size_t arity, std::size_t cell, std::size_t count) const;
  template <class X>
  static void expect_degree(const DElem<X>& e, Degree degree, const char* op) {
    if (e.degree != degree) throw StructuralError(std::string(op) + ": element has the wrong degree");
  }

  std::shared_ptr<const CatOperad> operad_;
  std::shared_ptr<const std::vector<LevelTables>> tables_;
  bool free_;
  Fault fault_;
};

// theta = mu . D_1 I_D . D_1 S for a carrier with source map X -> D_0 Y.
template <class X, class Src>
auto theta(const Monad& m, const DElem<X>& e, Src&& source_of) {
  if (e.degree != Degree::morphism) throw StructuralError("theta: element must have degree 1");
  auto sources = m.map(e, source_of);
  auto lifted = m.map(sources, [&](const auto& s) { return m.identity(s); });
  return m.mu(lifted);
}

// The unique omega in D_1 X with D_1 T(omega) = sigma and S_D(omega) = phi, for a
// discrete target map T: X -> Y. Failure signals corrupted data.
template <class X, class Y, class Tgt>
DElem<X> lift_through_target(const Monad& m, const DElem<Y>& sigma, const DElem<X>& phi, Tgt&& target_of) {
  if (sigma.degree != Degree::morphism || phi.degree != Degree::object || sigma.arity != phi.arity) {
    throw StructuralError("lift: shapes do not match");
  }
  const std::size_t src_cell = m.level_category(sigma.arity).source(sigma.cell);
  auto coords = m.coordinates_at(phi, src_cell);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!(target_of(coords[i]) == sigma.xs[i])) {
      throw InvariantViolation("lift: target of the list does not match the permutation data");
    }
  }
  return m.make(Degree::morphism, sigma.arity, sigma.cell, std::move(coords));
}

// chi: D_1 Y x_{D_0 Y} D_0 X -> D_0 X x_{D_0 Y} D_1 Y, via the lift and (T_D, theta).
template <class X, class Y, class Tgt, class Src>
auto chi(const Monad& m, const DElem<Y>& sigma, const DElem<X>& phi, Tgt&& target_of, Src&& source_of) {
  auto omega = lift_through_target(m, sigma, phi, target_of);
  auto moved = m.target(omega);
  auto rest = theta(m, omega, source_of);
  return std::make_pair(std::move(moved), std::move(rest));
}

// D applied to a finite category, truncated at arity <= bound.
struct DCategory {
  FinCategory category;
  std::vector<DElem<std::size_t>> objects;
  std::vector<DElem<std::size_t>> morphisms;
  std::map<DElem<std::size_t>, std::size_t> object_index;
  std::map<DElem<std::size_t>, std::size_t> morphism_index;
};

DCategory apply_to_category(const Monad& m, const FinCategory& c, std::size_t bound);
CatFunctor apply_to_functor(const Monad& m, const CatFunctor& f, const DCategory& src, const DCategory& tgt);

struct CartesianOptions {
  std::size_t squares = 100;
  std::size_t max_set = 5;
  std::size_t bound = 3;
  // Carrier sizes used for the eta/mu naturality squares.
  std::size_t max_naturality_set = 3;
  std::uint64_t seed = 1;
};

// Pullback preservation on random squares plus eta and mu naturality squares.
Report check_cartesian(const Monad& m, Degree degree, const CartesianOptions& options);

// D F lifts uniquely (target and/or source, as F does) within the arity bound.
Report check_preserves_cover(const Monad& m, const CatFunctor& f, std::size_t bound);

// D_0 X as a presheaf over D C, through D of the Grothendieck projection.
Presheaf derived_presheaf(const Monad& m, const Presheaf& p, std::size_t bound);

}  // namespace gmcat

namespace gmcat {

// Calls fn(tuple) for every tuple of length k whose entries are drawn from
// by_weight[w] (entries of weight w) with total weight at most budget.
template <class T, class Fn>
void for_each_weighted_tuple(const std::vector<std::vector<T>>& by_weight, std::size_t k, std::size_t budget,
                             Fn&& fn) {
  std::vector<T> current;
  current.reserve(k);
  std::function<void(std::size_t)> rec = [&](std::size_t remaining) {
    if (current.size() == k) {
      fn(current);
      return;
    }
    for (std::size_t w = 0; w <= remaining && w < by_weight.size(); ++w) {
      for (const auto& item : by_weight[w]) {
        current.push_back(item);
        rec(remaining - w);
        current.pop_back();
      }
    }
  };
  rec(budget);
}

// Elements of D_j(D_j X) with outer arity <= bound and total inner arity <= bound.
template <class X>
std::vector<DElem<DElem<X>>> nested_elements(const Monad& m, Degree degree, const std::vector<DElem<X>>& inner,
                                             std::size_t bound) {
  std::vector<std::vector<DElem<X>>> by_arity(bound + 1);
  for (const auto& e : inner) {
    if (e.arity <= bound) by_arity[e.arity].push_back(e);
  }
  std::vector<DElem<DElem<X>>> out;
  for (std::size_t k = 0; k <= std::min(bound, m.max_arity()); ++k) {
    for (std::size_t rep : m.orbit_representatives(degree, k)) {
      for_each_weighted_tuple(by_arity, k, bound, [&](const std::vector<DElem<X>>& xs) {
        out.push_back(m.make(degree, k, rep, xs));
      });
    }
  }
  if (!m.free()) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

}  // namespace gmcat
