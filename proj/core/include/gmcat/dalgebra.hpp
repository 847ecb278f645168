#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gmcat/dmulticat.hpp"
#include "gmcat/errors.hpp"
#include "gmcat/fincat.hpp"
#include "gmcat/opmonad.hpp"
#include "gmcat/report.hpp"

namespace gmcat {

// A D-algebra: a category with an action xi = (xi0, xi1) of the monad. Objects
// carry an additive weight (weight(xi0(l)) is the sum over l), used to keep
// enumerations inside the operad truncation; finite carriers use weight 0.
template <class A>
concept Algebra = requires(const A& a, const typename A::Obj& x, const typename A::Mor& c,
                           const DElem<typename A::Obj>& ox, const DElem<typename A::Mor>& mx, std::size_t bound) {
  { a.monad() } -> std::convertible_to<const Monad&>;
  { a.source(c) } -> std::convertible_to<typename A::Obj>;
  { a.target(c) } -> std::convertible_to<typename A::Obj>;
  { a.identity(x) } -> std::convertible_to<typename A::Mor>;
  { a.compose(c, c) } -> std::convertible_to<typename A::Mor>;
  { a.xi0(ox) } -> std::convertible_to<typename A::Obj>;
  { a.xi1(mx) } -> std::convertible_to<typename A::Mor>;
  { a.weight(x) } -> std::convertible_to<std::size_t>;
  { a.objects(bound) } -> std::convertible_to<std::vector<typename A::Obj>>;
  { a.morphisms_into(x, bound) } -> std::convertible_to<std::vector<typename A::Mor>>;
  { a.describe(c) } -> std::convertible_to<std::string>;
  { a.describe_object(x) } -> std::convertible_to<std::string>;
};

// Algebra on a finite category with xi given as procedures (closed form or table).
class FinAlgebra {
 public:
  using Obj = std::size_t;
  using Mor = std::size_t;
  using Xi = std::function<std::size_t(const DElem<std::size_t>&)>;

  FinAlgebra(std::string name, Monad monad, FinCategory category, Xi xi0, Xi xi1);

  const std::string& name() const { return name_; }
  const Monad& monad() const { return monad_; }
  const FinCategory& category() const { return *category_; }

  Obj source(Mor c) const { return category_->source(c); }
  Obj target(Mor c) const { return category_->target(c); }
  Mor identity(Obj x) const { return category_->identity(x); }
  Mor compose(Mor g, Mor f) const { return category_->compose_or_throw(g, f); }
  Obj xi0(const DElem<Obj>& e) const;
  Mor xi1(const DElem<Mor>& e) const;
  std::size_t weight(Obj) const { return 0; }
  std::vector<Obj> objects(std::size_t bound = 0) const;
  std::vector<Mor> morphisms_into(Obj x, std::size_t bound = 0) const;
  std::string describe(Mor c) const { return category_->morphisms.label(c); }
  std::string describe_object(Obj x) const { return category_->objects.label(x); }

  FinAlgebra with_xi0(Xi xi0) const;

 private:
  std::string name_;
  Monad monad_;
  std::shared_ptr<const FinCategory> category_;
  Xi xi0_;
  Xi xi1_;
};

// Discrete category on Z/k with xi0 the iterated sum (a permutative category
// over Barratt-Eccles with identity symmetries).
FinAlgebra sum_algebra(const Monad& monad, std::size_t modulus = 2);
// The same carrier with xi0 picking the first entry (0 on the empty list).
FinAlgebra first_entry_algebra(const Monad& monad, std::size_t modulus = 2);
// Algebra given by explicit tables on D_0 C_0 and D_1 C_1; lookups outside the
// tables raise TruncationError.
FinAlgebra tabulated_algebra(std::string name, const Monad& monad, FinCategory category,
                             std::map<DElem<std::size_t>, std::size_t> xi0,
                             std::map<DElem<std::size_t>, std::size_t> xi1);

// One object, morphisms the cyclic group of the given order.
FinCategory cyclic_group_category(std::size_t order);

// Morphisms of D(A) with the given target object of D_0 A_0.
template <class Obj, class Mor, class Into>
std::vector<DElem<Mor>> d_morphisms_into(const Monad& mo, const DElem<Obj>& y, Into&& morphisms_into) {
  const std::size_t n = y.arity;
  std::vector<std::vector<Mor>> options(n);
  for (std::size_t i = 0; i < n; ++i) options[i] = morphisms_into(y.xs[i]);
  std::vector<DElem<Mor>> out;
  for (std::size_t cell : mo.morphisms_with_target(n, y.cell)) {
    std::vector<Mor> current;
    auto rec = [&](auto& self, std::size_t i) -> void {
      if (i == n) {
        out.push_back(mo.make(Degree::morphism, n, cell, current));
        return;
      }
      for (const auto& g : options[i]) {
        current.push_back(g);
        self(self, i + 1);
        current.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

// The free algebra D C on a finite category; xi = mu and weight = arity.
class FreeAlgebra {
 public:
  using Obj = DElem<std::size_t>;
  using Mor = DElem<std::size_t>;

  FreeAlgebra(Monad monad, FinCategory category);

  const Monad& monad() const { return monad_; }
  const FinCategory& category() const { return *category_; }

  Obj source(const Mor& c) const;
  Obj target(const Mor& c) const;
  Mor identity(const Obj& x) const;
  Mor compose(const Mor& g, const Mor& f) const;
  Obj xi0(const DElem<Obj>& e) const { return monad_.mu(e); }
  Mor xi1(const DElem<Mor>& e) const { return monad_.mu(e); }
  std::size_t weight(const Obj& x) const { return x.arity; }
  std::vector<Obj> objects(std::size_t bound) const;
  std::vector<Mor> morphisms_into(const Obj& x, std::size_t bound = 0) const;
  std::string describe(const Mor& c) const;
  std::string describe_object(const Obj& x) const;

 private:
  Monad monad_;
  std::shared_ptr<const FinCategory> category_;
};

// ---------------------------------------------------------------------------
// Underlying multicategory.

// U(A): objects those of A, morphisms pairs (arrow, decomposition) with the
// decomposition a list l in D_0 A_0 and xi0(l) = source(arrow).
template <Algebra A>
class Underlying {
 public:
  using Obj = typename A::Obj;
  struct Mor {
    typename A::Mor arrow;
    DElem<Obj> decomposition;
    friend bool operator==(const Mor&, const Mor&) = default;
    friend auto operator<=>(const Mor&, const Mor&) = default;
  };

  explicit Underlying(A algebra) : a_(std::move(algebra)) {}

  const A& algebra() const { return a_; }
  const Monad& monad() const { return a_.monad(); }

  Obj target(const Mor& u) const { return a_.target(u.arrow); }
  const DElem<Obj>& source(const Mor& u) const { return u.decomposition; }
  Mor identity(const Obj& x) const { return {a_.identity(x), monad().eta(Degree::object, x)}; }

  // u . delta = (arrow o xi1(D_1 I(delta)), S_D(delta)).
  Mor act(const Mor& u, const DElem<Obj>& delta) const {
    const Monad& mo = monad();
    if (mo.target(delta) != u.decomposition) throw StructuralError("underlying: action outside the domain");
    auto lifted = mo.map(delta, [&](const Obj& x) { return a_.identity(x); });
    return {a_.compose(u.arrow, a_.xi1(lifted)), mo.source(delta)};
  }

  // gamma(u, phi) = (arrow o xi1(I_D(D_0 kappa_1 phi)), mu(D_0 S phi)).
  Mor compose(const Mor& u, const DElem<Mor>& phi) const {
    const Monad& mo = monad();
    if (mo.map(phi, [&](const Mor& v) { return target(v); }) != u.decomposition) {
      throw StructuralError("underlying: composition outside the domain");
    }
    return {a_.compose(u.arrow, a_.xi1(mo.identity(kappa_list(phi)))),
            mo.mu(mo.map(phi, [](const Mor& v) { return v.decomposition; }))};
  }

  DElem<typename A::Mor> kappa_list(const DElem<Mor>& phi) const {
    return monad().map(phi, [](const Mor& v) { return v.arrow; });
  }

  std::vector<Obj> objects(std::size_t = 0) const { return a_.objects(monad().max_arity()); }

  // Decompositions of arity <= bound. Weight additivity restricts the lists to
  // total weight equal to that of the arrow's source.
  std::vector<Mor> morphisms_into(const Obj& b, std::size_t bound) const {
    const Monad& mo = monad();
    const std::size_t cap = mo.max_arity();
    std::vector<std::vector<Obj>> by_weight(cap + 1);
    for (const auto& x : a_.objects(cap)) {
      const std::size_t w = a_.weight(x);
      if (w <= cap) by_weight[w].push_back(x);
    }
    std::vector<Mor> out;
    for (const auto& c : a_.morphisms_into(b, cap)) {
      const Obj s = a_.source(c);
      const std::size_t w = a_.weight(s);
      for (std::size_t n = 0; n <= std::min(bound, cap); ++n) {
        for (std::size_t rep : mo.orbit_representatives(Degree::object, n)) {
          for_each_weighted_tuple(by_weight, n, w, [&](const std::vector<Obj>& xs) {
            std::size_t total = 0;
            for (const auto& x : xs) total += a_.weight(x);
            if (total != w) return;
            auto l = mo.make(Degree::object, n, rep, xs);
            if (a_.xi0(l) == s) out.push_back({c, std::move(l)});
          });
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::string describe(const Mor& u) const {
    return a_.describe(u.arrow) + " over " +
           monad().describe(u.decomposition, [&](const Obj& x) { return a_.describe_object(x); });
  }
  std::string describe_object(const Obj& x) const { return a_.describe_object(x); }

  // Comparison maps into the nerve of A: composable strings, leftmost last applied.
  typename A::Mor kappa1(const Mor& u) const { return u.arrow; }
  std::vector<typename A::Mor> kappa2(const Composable<Mor>& w) const {
    return {w.f.arrow, a_.xi1(monad().identity(kappa_list(w.phi)))};
  }
  std::vector<typename A::Mor> kappa3(const Composable3<Mor>& w) const {
    const Monad& mo = monad();
    auto lists = mo.map(w.inner, [](const Composable<Mor>& c) { return c.phi; });
    auto k = kappa2(w.top);
    k.push_back(a_.xi1(mo.identity(kappa_list(mo.mu(lists)))));
    return k;
  }

 private:
  A a_;
};

template <Algebra A>
Underlying<A> underlying(A algebra) {
  return Underlying<A>(std::move(algebra));
}

// ---------------------------------------------------------------------------
// Validation.

// Objects of D_0 A_0 up to the arity bound with total weight within the truncation.
template <Algebra A>
std::vector<DElem<typename A::Obj>> algebra_object_lists(const A& a, std::size_t bound) {
  const Monad& mo = a.monad();
  const std::size_t cap = mo.max_arity();
  std::vector<std::vector<typename A::Obj>> by_weight(cap + 1);
  for (const auto& x : a.objects(cap)) {
    if (a.weight(x) <= cap) by_weight[a.weight(x)].push_back(x);
  }
  std::vector<DElem<typename A::Obj>> out;
  for (std::size_t n = 0; n <= std::min(bound, cap); ++n) {
    for (std::size_t rep : mo.orbit_representatives(Degree::object, n)) {
      for_each_weighted_tuple(by_weight, n, cap,
                              [&](const std::vector<typename A::Obj>& xs) { out.push_back(mo.make(Degree::object, n, rep, xs)); });
    }
  }
  if (!mo.free()) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

// Category laws on objects of weight <= bound.
template <Algebra A>
Report check_category_laws(const A& a, std::size_t bound) {
  using Mor = typename A::Mor;
  Report report;
  const auto objects = a.objects(bound);
  std::map<typename A::Obj, std::vector<Mor>> into;
  for (const auto& y : objects) into[y] = a.morphisms_into(y, bound);
  auto show = [&](const Mor& c) { return a.describe(c); };
  report.run("category.ends", [&](Check& check) {
    for (const auto& y : objects) {
      check.expect(a.source(a.identity(y)) == y && a.target(a.identity(y)) == y,
                   [&] { return "identity of " + a.describe_object(y) + " has the wrong ends"; });
      for (const auto& c : into[y]) {
        check.expect(a.target(c) == y, [&] { return show(c) + " listed under the wrong target"; });
      }
    }
  });
  report.run("category.unit", [&](Check& check) {
    for (const auto& [y, cs] : into) {
      for (const auto& c : cs) {
        check.expect(a.compose(a.identity(y), c) == c && a.compose(c, a.identity(a.source(c))) == c,
                     [&] { return "identity does not act as a unit on " + show(c); });
      }
    }
  });
  report.run("category.associativity", [&](Check& check) {
    for (const auto& [z, hs] : into) {
      for (const auto& h : hs) {
        auto gi = into.find(a.source(h));
        if (gi == into.end()) continue;
        for (const auto& g : gi->second) {
          auto fi = into.find(a.source(g));
          if (fi == into.end()) continue;
          for (const auto& f : fi->second) {
            check.expect(a.compose(a.compose(h, g), f) == a.compose(h, a.compose(g, f)),
                         [&] { return "(" + show(h) + " o " + show(g) + ") o " + show(f) + " differs"; });
          }
        }
      }
    }
  });
  return report;
}

// Monad action laws and functoriality of xi within the arity bound.
template <Algebra A>
Report validate_algebra(const A& a, std::size_t bound) {
  using Obj = typename A::Obj;
  using Mor = typename A::Mor;
  const Monad& mo = a.monad();
  bound = std::min(bound, mo.max_arity());
  const std::size_t cap = mo.max_arity();
  Report report = check_category_laws(a, bound);
  auto show_objs = [&](const DElem<Obj>& e) { return mo.describe(e, [&](const Obj& x) { return a.describe_object(x); }); };
  auto show_mors = [&](const DElem<Mor>& e) { return mo.describe(e, [&](const Mor& c) { return a.describe(c); }); };

  const auto lists = algebra_object_lists(a, bound);
  auto into_a = [&](const Obj& x) { return a.morphisms_into(x, cap); };
  auto morphism_weight = [&](const Mor& c) { return std::max(a.weight(a.source(c)), a.weight(a.target(c))); };
  // lists of morphisms whose ends can still be flattened under the truncation
  auto within_cap = [&](const DElem<Mor>& e) {
    std::size_t total = 0;
    for (const auto& c : e.xs) total += morphism_weight(c);
    return total <= cap;
  };
  std::vector<DElem<Mor>> d_morphisms;
  for (const auto& y : lists) {
    for (auto& e : d_morphisms_into<Obj, Mor>(mo, y, into_a)) {
      if (within_cap(e)) d_morphisms.push_back(std::move(e));
    }
  }

  report.run("xi.weight", [&](Check& check) {
    for (const auto& l : lists) {
      std::size_t total = 0;
      for (const auto& x : l.xs) total += a.weight(x);
      check.expect(a.weight(a.xi0(l)) == total, [&] { return "weight is not additive at " + show_objs(l); });
    }
  });

  report.run("xi.unit", [&](Check& check) {
    for (const auto& x : a.objects(bound)) {
      check.expect(a.xi0(mo.eta(Degree::object, x)) == x, [&] { return "xi0(eta) moves " + a.describe_object(x); });
      for (const auto& c : a.morphisms_into(x, cap)) {
        check.expect(a.xi1(mo.eta(Degree::morphism, c)) == c, [&] { return "xi1(eta) moves " + a.describe(c); });
      }
    }
  });

  report.run("xi.associativity", [&](Check& check) {
    // nested lists whose total weight stays within the truncation
    auto weight_of = [&](const auto& ll, auto&& weigh) {
      std::size_t total = 0;
      for (const auto& l : ll.xs) {
        for (const auto& x : l.xs) total += weigh(x);
      }
      return total;
    };
    auto object_weight = [&](const Obj& x) { return a.weight(x); };
    for (const auto& ll : nested_elements(mo, Degree::object, lists, bound)) {
      if (weight_of(ll, object_weight) > cap) continue;
      const auto flat = a.xi0(mo.mu(ll));
      const auto stepwise = a.xi0(mo.map(ll, [&](const DElem<Obj>& l) { return a.xi0(l); }));
      check.expect(flat == stepwise, [&] {
        return "xi0(mu) differs from xi0(D_0 xi0) at [" + mo.operad().label(Degree::object, {ll.arity, ll.cell}) +
               "] of " + std::to_string(ll.arity) + " lists";
      });
    }
    for (const auto& ll : nested_elements(mo, Degree::morphism, d_morphisms, bound)) {
      if (weight_of(ll, morphism_weight) > cap) continue;
      const auto flat = a.xi1(mo.mu(ll));
      const auto stepwise = a.xi1(mo.map(ll, [&](const DElem<Mor>& l) { return a.xi1(l); }));
      check.expect(flat == stepwise, [&] { return "xi1(mu) differs from xi1(D_1 xi1) on a nested list"; });
    }
  });

  report.run("xi.functor", [&](Check& check) {
    for (const auto& l : lists) {
      const auto ids = mo.identity(mo.map(l, [&](const Obj& x) { return a.identity(x); }));
      check.expect(a.xi1(ids) == a.identity(a.xi0(l)), [&] { return "xi does not preserve the identity on " + show_objs(l); });
    }
    for (const auto& e : d_morphisms) {
      const Mor v = a.xi1(e);
      check.expect(a.source(v) == a.xi0(mo.source(mo.map(e, [&](const Mor& c) { return a.source(c); }))),
                   [&] { return "xi does not preserve the source of " + show_mors(e); });
      check.expect(a.target(v) == a.xi0(mo.target(mo.map(e, [&](const Mor& c) { return a.target(c); }))),
                   [&] { return "xi does not preserve the target of " + show_mors(e); });
    }
    for (const auto& g : d_morphisms) {
      const auto src = mo.source(mo.map(g, [&](const Mor& c) { return a.source(c); }));
      for (const auto& f : d_morphisms_into<Obj, Mor>(mo, src, into_a)) {
        if (!within_cap(f)) continue;
        const auto gf = mo.compose_with(g, f, [&](const Mor& x, const Mor& y) { return a.compose(x, y); });
        check.expect(a.xi1(gf) == a.compose(a.xi1(g), a.xi1(f)),
                     [&] { return "xi does not preserve the composite " + show_mors(g) + " o " + show_mors(f); });
      }
    }
  });
  return report;
}

// Comparison maps: composability, ends, composites and the inductive face squares.
template <Algebra A>
Report check_kappa(const Underlying<A>& u, std::size_t bound) {
  using UMor = typename Underlying<A>::Mor;
  const A& a = u.algebra();
  const Monad& mo = u.monad();
  Report report;
  auto composite = [&](const std::vector<typename A::Mor>& k) {
    auto out = k.front();
    for (std::size_t i = 1; i < k.size(); ++i) out = a.compose(out, k[i]);
    return out;
  };
  auto composable = [&](const std::vector<typename A::Mor>& k) {
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (!(a.source(k[i]) == a.target(k[i + 1]))) return false;
    }
    return true;
  };
  const auto morphisms = all_morphisms(u, bound);
  const auto m2 = enumerate_M2(u, bound);
  const auto m3 = enumerate_M3(u, bound);

  report.run("kappa.level1", [&](Check& check) {
    for (const auto& f : morphisms) {
      check.expect(a.target(u.kappa1(f)) == u.target(f), [&] { return "kappa1 changes the target of " + u.describe(f); });
      check.expect(a.source(u.kappa1(f)) == a.xi0(f.decomposition),
                   [&] { return "kappa1 source is not xi0 of the decomposition for " + u.describe(f); });
    }
  });
  report.run("kappa.level2", [&](Check& check) {
    for (const auto& w : m2) {
      const auto k = u.kappa2(w);
      check.expect(composable(k), [&] { return "kappa2 is not composable at " + u.describe(w.f); });
      check.expect(k.front() == u.kappa1(w.f), [&] { return "kappa2 first face differs at " + u.describe(w.f); });
      check.expect(composite(k) == u.kappa1(u.compose(w.f, w.phi)),
                   [&] { return "kappa2 composite differs from gamma at " + u.describe(w.f); });
    }
    for (const auto& f : morphisms) {
      const Composable<UMor> left{u.identity(u.target(f)), mo.eta(Degree::object, f)};
      const std::vector<typename A::Mor> expected{a.identity(u.target(f)), u.kappa1(f)};
      check.expect(u.kappa2(left) == expected, [&] { return "kappa2 . I_L differs from I_L . kappa1 at " + u.describe(f); });
    }
  });
  report.run("kappa.level3", [&](Check& check) {
    for (const auto& w : m3) {
      const auto k = u.kappa3(w);
      check.expect(composable(k), [&] { return "kappa3 is not composable at " + u.describe(w.top.f); });
      const auto head = u.kappa2(w.top);
      check.expect(k[0] == head[0] && k[1] == head[1], [&] { return "kappa3 front face differs at " + u.describe(w.top.f); });
      // tail = xi of D_0 kappa2 on the inner composables
      auto tail = mo.map(w.inner, [&](const Composable<UMor>& c) { return u.kappa2(c); });
      const auto first = a.xi1(mo.identity(mo.map(tail, [](const auto& k2) { return k2[0]; })));
      const auto second = a.xi1(mo.identity(mo.map(tail, [](const auto& k2) { return k2[1]; })));
      check.expect(k[1] == first && k[2] == second, [&] { return "kappa3 back face differs at " + u.describe(w.top.f); });
      const auto t = gamma_T(u, w);
      check.expect(composite(k) == u.kappa1(u.compose(t.f, t.phi)),
                   [&] { return "kappa3 composite differs from gamma at " + u.describe(w.top.f); });
    }
  });
  return report;
}

}  // namespace gmcat
