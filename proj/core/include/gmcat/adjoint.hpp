#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmcat/dalgebra.hpp"
#include "gmcat/dmulticat.hpp"
#include "gmcat/errors.hpp"
#include "gmcat/opmonad.hpp"
#include "gmcat/report.hpp"

namespace gmcat {

// A morphism of the provisional algebra: a list phi of morphisms of M and
// permutation data sigma with T_D(sigma) = mu(D_0 S(phi)). Its source is
// S_D(sigma) and its target D_0 T(phi).
template <class Mor, class Obj>
struct HatMorphism {
  DElem<Mor> phi;
  DElem<Obj> sigma;
  friend bool operator==(const HatMorphism&, const HatMorphism&) = default;
  friend auto operator<=>(const HatMorphism&, const HatMorphism&) = default;
};

// Splits flat, a list over the concatenation of the shape's inner lists, into
// blocks matching the shape. Requires D_0 T(flat) = mu(shape) for the caller's T.
template <class X, class Y>
DElem<DElem<Y>> unflatten(const Monad& mo, const DElem<DElem<X>>& shape, const DElem<Y>& flat) {
  std::vector<Cell> inner;
  std::size_t total = 0;
  for (const auto& s : shape.xs) {
    inner.push_back({s.arity, s.cell});
    total += s.arity;
  }
  if (total != flat.arity) throw InvariantViolation("unflatten: arities do not match");
  const std::size_t raw = mo.operad().compose(shape.degree, {shape.arity, shape.cell}, inner);
  const auto coords = mo.coordinates_at(flat, raw);
  std::vector<DElem<Y>> blocks;
  std::size_t offset = 0;
  for (const auto& s : shape.xs) {
    std::vector<Y> part(coords.begin() + static_cast<std::ptrdiff_t>(offset),
                        coords.begin() + static_cast<std::ptrdiff_t>(offset + s.arity));
    blocks.push_back(mo.make(s.degree, s.arity, s.cell, std::move(part)));
    offset += s.arity;
  }
  return mo.make(shape.degree, shape.arity, shape.cell, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Provisional left adjoint.

template <Multicategory M>
class HatL {
 public:
  using MObj = typename M::Obj;
  using MMor = typename M::Mor;
  using Obj = DElem<MObj>;
  using Mor = HatMorphism<MMor, MObj>;

  explicit HatL(M multicat) : m_(std::make_shared<const M>(std::move(multicat))) {}

  const M& multicat() const { return *m_; }
  const Monad& monad() const { return m_->monad(); }

  Obj source(const Mor& e) const { return monad().source(e.sigma); }
  Obj target(const Mor& e) const {
    return monad().map(e.phi, [&](const MMor& f) { return m_->target(f); });
  }
  Obj list_source(const DElem<MMor>& phi) const {
    return monad().mu(monad().map(phi, [&](const MMor& f) { return m_->source(f); }));
  }
  Mor identity(const Obj& x) const {
    return {monad().map(x, [&](const MObj& a) { return m_->identity(a); }), monad().identity(x)};
  }

  // Moves g.sigma past f.phi with chi, composes the lists blockwise with gamma
  // and the permutation data with gamma_D.
  Mor compose(const Mor& g, const Mor& f) const {
    const Monad& mo = monad();
    if (source(g) != target(f)) throw StructuralError("hat L: morphisms are not composable");
    auto tgt = [&](const MMor& h) { return m_->target(h); };
    auto src = [&](const MMor& h) { return m_->source(h); };
    const auto [moved, rest] = chi(mo, g.sigma, f.phi, tgt, src);
    const auto blocks = unflatten(mo, mo.map(g.phi, src), moved);
    std::vector<MMor> composed;
    for (std::size_t i = 0; i < g.phi.arity; ++i) composed.push_back(m_->compose(g.phi.xs[i], blocks.xs[i]));
    return {mo.make(Degree::object, g.phi.arity, g.phi.cell, std::move(composed)), mo.compose(rest, f.sigma)};
  }

  Obj xi0(const DElem<Obj>& e) const { return monad().mu(e); }
  // mu . T_D on the lists and mu on the permutation data.
  Mor xi1(const DElem<Mor>& e) const {
    const Monad& mo = monad();
    auto lists = mo.target(mo.map(e, [](const Mor& h) { return h.phi; }));
    auto perms = mo.map(e, [](const Mor& h) { return h.sigma; });
    return {mo.mu(lists), mo.mu(perms)};
  }
  std::size_t weight(const Obj& x) const { return x.arity; }

  std::vector<Obj> objects(std::size_t bound) const {
    return monad().elements_up_to(Degree::object, m_->objects(bound), bound);
  }

  // Morphisms into y whose source has arity <= bound.
  std::vector<Mor> morphisms_into(const Obj& y, std::size_t bound) const {
    std::vector<Mor> out;
    for (const auto& phi : lists_over(*m_, y, 0, std::min(bound, monad().max_arity()))) {
      for (auto& sigma : monad().morphisms_into(list_source(phi))) out.push_back({phi, std::move(sigma)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Mor> hom(const Obj& x, const Obj& y) const {
    std::vector<Mor> out;
    for (const auto& phi : lists_over(*m_, y, x.arity, x.arity)) {
      for (auto& sigma : monad().morphisms_between(x, list_source(phi))) out.push_back({phi, std::move(sigma)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string describe(const Mor& e) const {
    return "(" + describe_list(*m_, e.phi) + " | " + describe_objects(*m_, e.sigma) + ")";
  }
  std::string describe_object(const Obj& x) const { return describe_objects(*m_, x); }

 private:
  std::shared_ptr<const M> m_;
};

// ---------------------------------------------------------------------------
// Coequalizer quotient.

// One generating instance of the relation: (D_0 psi(phi, tau), sigma) ~
// (phi, gamma_D(mu(I_D(tau)), sigma)).
template <class Mor>
struct RelationInstance {
  Mor attached;  // psi leg
  Mor absorbed;  // gamma_D leg
  bool identity_tau = false;
};

template <class Mor>
struct HomClasses {
  std::vector<Mor> members;  // sorted
  std::vector<std::size_t> class_of;
  std::vector<Mor> representatives;  // minimum of each class, in class order
  std::size_t relation_instances = 0;
};

template <Multicategory M>
class LAlg {
 public:
  using Hat = HatL<M>;
  using MObj = typename M::Obj;
  using MMor = typename M::Mor;
  using Obj = typename Hat::Obj;
  using Mor = typename Hat::Mor;

  explicit LAlg(M multicat) : hat_(std::move(multicat)), cache_(std::make_shared<Cache>()) {}

  const Hat& hat() const { return hat_; }
  const M& multicat() const { return hat_.multicat(); }
  const Monad& monad() const { return hat_.monad(); }

  // Generating instances landing in hom(x, y), for each phi into y and each
  // tau attached to phi.
  template <class Fn>
  void for_each_relation(const Obj& x, const Obj& y, Fn&& fn) const {
    const Monad& mo = monad();
    const M& m = multicat();
    for (const auto& phi : lists_over(m, y, x.arity, x.arity)) {
      const std::size_t n = phi.arity;
      std::vector<std::vector<DElem<MObj>>> options(n);
      for (std::size_t i = 0; i < n; ++i) options[i] = mo.morphisms_into(m.source(phi.xs[i]));
      std::vector<DElem<MObj>> taus;
      auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == n) {
          std::vector<MMor> acted;
          bool trivial = true;
          for (std::size_t k = 0; k < n; ++k) {
            acted.push_back(m.act(phi.xs[k], taus[k]));
            trivial = trivial && taus[k] == mo.identity(m.source(phi.xs[k]));
          }
          const auto moved = mo.make(Degree::object, n, phi.cell, std::move(acted));
          const auto absorb = mo.mu(mo.identity(mo.make(Degree::object, n, phi.cell, taus)));
          for (const auto& sigma : mo.morphisms_between(x, hat_.list_source(moved))) {
            fn(RelationInstance<Mor>{{moved, sigma}, {phi, mo.compose(absorb, sigma)}, trivial});
          }
          return;
        }
        for (const auto& t : options[i]) {
          taus.push_back(t);
          self(self, i + 1);
          taus.pop_back();
        }
      };
      rec(rec, 0);
    }
  }

  // Per-hom-set closure by union-find; cached and safe under concurrent use.
  std::shared_ptr<const HomClasses<Mor>> classes(const Obj& x, const Obj& y) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->homs.find({x, y});
      if (it != cache_->homs.end()) return it->second;
    }
    auto result = std::make_shared<HomClasses<Mor>>();
    result->members = hat_.hom(x, y);
    const auto& members = result->members;
    std::vector<std::size_t> parent(members.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    auto index = [&](const Mor& e) {
      auto it = std::lower_bound(members.begin(), members.end(), e);
      if (it == members.end() || !(*it == e)) {
        throw InvariantViolation("coequalizer: relation leg " + hat_.describe(e) + " leaves its hom-set");
      }
      return static_cast<std::size_t>(it - members.begin());
    };
    for_each_relation(x, y, [&](const RelationInstance<Mor>& r) {
      ++result->relation_instances;
      const std::size_t a = find(index(r.attached));
      const std::size_t b = find(index(r.absorbed));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    });
    // Roots are class minima since members are sorted and unions keep the smaller root.
    std::map<std::size_t, std::size_t> class_index;
    result->class_of.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::size_t root = find(i);
      auto [it, inserted] = class_index.emplace(root, result->representatives.size());
      if (inserted) result->representatives.push_back(members[root]);
      result->class_of[i] = it->second;
    }
    std::lock_guard lock(cache_->mutex);
    return cache_->homs.emplace(std::make_pair(x, y), std::move(result)).first->second;
  }

  Mor canonical(const Mor& e) const {
    const auto c = classes(source(e), target(e));
    auto it = std::lower_bound(c->members.begin(), c->members.end(), e);
    if (it == c->members.end() || !(*it == e)) {
      throw InvariantViolation("coequalizer: " + hat_.describe(e) + " is not a member of its hom-set");
    }
    return c->representatives[c->class_of[static_cast<std::size_t>(it - c->members.begin())]];
  }

  // Equality in L; distinct ends give false.
  bool equivalent(const Mor& a, const Mor& b) const {
    if (source(a) != source(b) || target(a) != target(b)) return false;
    return canonical(a) == canonical(b);
  }

  Obj source(const Mor& e) const { return hat_.source(e); }
  Obj target(const Mor& e) const { return hat_.target(e); }
  Mor identity(const Obj& x) const { return canonical(hat_.identity(x)); }
  Mor compose(const Mor& g, const Mor& f) const { return canonical(hat_.compose(g, f)); }
  Obj xi0(const DElem<Obj>& e) const { return hat_.xi0(e); }
  Mor xi1(const DElem<Mor>& e) const { return canonical(hat_.xi1(e)); }
  std::size_t weight(const Obj& x) const { return x.arity; }
  std::vector<Obj> objects(std::size_t bound) const { return hat_.objects(bound); }

  std::vector<Mor> hom(const Obj& x, const Obj& y) const { return classes(x, y)->representatives; }

  std::vector<Mor> morphisms_into(const Obj& y, std::size_t bound) const {
    std::vector<Mor> out;
    for (const auto& e : hat_.morphisms_into(y, bound)) out.push_back(canonical(e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::string describe(const Mor& e) const { return hat_.describe(e); }
  std::string describe_object(const Obj& x) const { return hat_.describe_object(x); }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<Obj, Obj>, std::shared_ptr<const HomClasses<Mor>>> homs;
  };

  Hat hat_;
  std::shared_ptr<Cache> cache_;
};

template <Multicategory M>
HatL<M> hat_L(M m) {
  return HatL<M>(std::move(m));
}

template <Multicategory M>
LAlg<M> L(M m) {
  return LAlg<M>(std::move(m));
}

// coeq_equiv on a multicategory: equality of the two classes in L.
template <Multicategory M>
bool coeq_equiv(const LAlg<M>& l, const typename LAlg<M>::Mor& a, const typename LAlg<M>::Mor& b) {
  return l.equivalent(a, b);
}

// Source and target are outside the relation, the identity tau splits both legs,
// and composition and xi descend to classes.
template <Multicategory M>
Report check_coequalizer(const LAlg<M>& l, std::size_t bound) {
  using Mor = typename LAlg<M>::Mor;
  const auto objects = l.objects(bound);
  Report report;
  report.run("coequalizer.legs", [&](Check& check) {
    for (const auto& x : objects) {
      for (const auto& y : objects) {
        l.for_each_relation(x, y, [&](const RelationInstance<Mor>& r) {
          check.expect(l.hat().source(r.attached) == x && l.hat().source(r.absorbed) == x &&
                           l.hat().target(r.attached) == y && l.hat().target(r.absorbed) == y,
                       [&] { return "relation instance at " + l.describe(r.attached) + " moves its ends"; });
          if (r.identity_tau) {
            check.expect(r.attached == r.absorbed,
                         [&] { return "identity tau does not split the legs at " + l.describe(r.attached); });
          }
        });
      }
    }
  });
  report.run("coequalizer.descent", [&](Check& check) {
    for (const auto& x : objects) {
      for (const auto& y : objects) {
        const auto first = l.classes(x, y);
        for (const auto& z : objects) {
          const auto second = l.classes(y, z);
          // every member pair must land in the class of the representative pair
          for (std::size_t i = 0; i < first->members.size(); ++i) {
            for (std::size_t j = 0; j < second->members.size(); ++j) {
              const Mor& f = first->members[i];
              const Mor& g = second->members[j];
              const Mor expected = l.compose(second->representatives[second->class_of[j]],
                                             first->representatives[first->class_of[i]]);
              check.expect(l.compose(g, f) == expected, [&] {
                return "composite of " + l.describe(g) + " and " + l.describe(f) + " depends on the representatives";
              });
            }
          }
        }
      }
    }
  });
  return report;
}

// ---------------------------------------------------------------------------
// Unit and counit.

// f -> ([f] with identity permutation data, D_0 eta(S f)) in U(L M) or U(L^ M).
template <class Target, Multicategory M>
typename Underlying<Target>::Mor unit_morphism(const Target& target, const M& m, const typename M::Mor& f) {
  const Monad& mo = m.monad();
  typename Target::Mor e{mo.eta(Degree::object, f), mo.identity(m.source(f))};
  if constexpr (requires { target.canonical(e); }) e = target.canonical(e);
  return {std::move(e), mo.map(m.source(f), [&](const typename M::Obj& a) { return mo.eta(Degree::object, a); })};
}

template <class Target, Multicategory M>
Report check_unit(const Target& target, const M& m, std::size_t bound) {
  const Monad& mo = m.monad();
  const Underlying<Target> u(target);
  auto on_obj = [&](const typename M::Obj& a) { return mo.eta(Degree::object, a); };
  auto on_mor = [&](const typename M::Mor& f) { return unit_morphism(target, m, f); };
  return check_multicat_map(m, u, on_obj, on_mor, bound);
}

template <Multicategory M>
struct HatUnitWitness {
  typename M::Mor f;
  DElem<typename M::Obj> delta;
  std::string description;
  // The two sides compared in L instead of L^.
  bool agree_in_L = false;
};

// First (f, delta) where the unit into U(L^ M) fails presheaf equivariance.
template <Multicategory M>
std::optional<HatUnitWitness<M>> witness_hat_unit_failure(const M& m, std::size_t bound) {
  const Monad& mo = m.monad();
  const HatL<M> hat(m);
  const LAlg<M> l(m);
  const Underlying<HatL<M>> uh(hat);
  const Underlying<LAlg<M>> ul(l);
  auto eta_obj = [&](const typename M::Obj& a) { return mo.eta(Degree::object, a); };
  for (const auto& f : all_morphisms(m, std::min(bound, mo.max_arity()))) {
    for (const auto& delta : mo.morphisms_into(m.source(f))) {
      const auto lhs = unit_morphism(hat, m, m.act(f, delta));
      const auto rhs = uh.act(unit_morphism(hat, m, f), mo.map(delta, eta_obj));
      if (lhs == rhs) continue;
      HatUnitWitness<M> w{f, delta, {}, false};
      w.description = "unit(" + m.describe(f) + " . " + describe_objects(m, delta) + ") = " + hat.describe(lhs.arrow) +
                      " but unit(" + m.describe(f) + ") . delta = " + hat.describe(rhs.arrow);
      const auto lhs_l = unit_morphism(l, m, m.act(f, delta));
      const auto rhs_l = ul.act(unit_morphism(l, m, f), mo.map(delta, eta_obj));
      w.agree_in_L = lhs_l == rhs_l;
      return w;
    }
  }
  return std::nullopt;
}

// Counit L(U A) -> A: xi0 on objects; on morphisms the composite
// xi1(I_D(D_0 kappa_1 phi)) o xi1(D_1 I(sigma)).
template <Algebra A>
class Counit {
 public:
  using UA = Underlying<A>;
  using Source = LAlg<UA>;

  explicit Counit(A algebra) : l_(UA(std::move(algebra))) {}

  const Source& source_algebra() const { return l_; }
  const A& algebra() const { return l_.multicat().algebra(); }

  typename A::Obj on_object(const DElem<typename A::Obj>& x) const { return algebra().xi0(x); }
  typename A::Mor on_morphism(const typename Source::Mor& e) const {
    const A& a = algebra();
    const Monad& mo = a.monad();
    const auto lists = a.xi1(mo.identity(mo.map(e.phi, [](const typename UA::Mor& v) { return v.arrow; })));
    const auto perms = a.xi1(mo.map(e.sigma, [&](const typename A::Obj& x) { return a.identity(x); }));
    return a.compose(lists, perms);
  }

 private:
  Source l_;
};

template <Algebra A>
Report check_counit(const Counit<A>& counit, std::size_t bound) {
  using LMor = typename Counit<A>::Source::Mor;
  const auto& l = counit.source_algebra();
  const A& a = counit.algebra();
  const Monad& mo = a.monad();
  bound = std::min(bound, mo.max_arity());
  auto list_weight = [&](const auto& x) {
    std::size_t total = 0;
    for (const auto& y : x.xs) total += a.weight(y);
    return total;
  };
  // only lists whose image under xi0 fits under the truncation
  std::vector<typename Counit<A>::Source::Obj> objects;
  for (auto& x : l.objects(bound)) {
    if (list_weight(x) <= mo.max_arity()) objects.push_back(std::move(x));
  }
  Report report;

  report.run("counit.classes", [&](Check& check) {
    for (const auto& x : objects) {
      for (const auto& y : objects) {
        const auto c = l.classes(x, y);
        for (std::size_t i = 0; i < c->members.size(); ++i) {
          const auto& rep = c->representatives[c->class_of[i]];
          check.expect(counit.on_morphism(c->members[i]) == counit.on_morphism(rep),
                       [&] { return "counit separates " + l.describe(c->members[i]) + " from " + l.describe(rep); });
        }
      }
    }
  });

  std::vector<LMor> morphisms;
  report.run("counit.functor", [&](Check& check) {
    for (const auto& x : objects) {
      check.expect(counit.on_morphism(l.identity(x)) == a.identity(counit.on_object(x)),
                   [&] { return "counit does not preserve the identity on " + l.describe_object(x); });
      for (const auto& y : objects) {
        for (const auto& f : l.hom(x, y)) {
          morphisms.push_back(f);
          const auto v = counit.on_morphism(f);
          check.expect(a.source(v) == counit.on_object(x) && a.target(v) == counit.on_object(y),
                       [&] { return "counit moves the ends of " + l.describe(f); });
          for (const auto& z : objects) {
            for (const auto& g : l.hom(y, z)) {
              check.expect(counit.on_morphism(l.compose(g, f)) == a.compose(counit.on_morphism(g), v),
                           [&] { return "counit does not preserve " + l.describe(g) + " o " + l.describe(f); });
            }
          }
        }
      }
    }
  });

  report.run("counit.algebra_map", [&](Check& check) {
    for (const auto& ll : nested_elements(mo, Degree::object, objects, bound)) {
      std::size_t total = 0;
      std::size_t length = 0;
      for (const auto& x : ll.xs) {
        total += list_weight(x);
        length += x.arity;
      }
      if (length > mo.max_arity()) continue;
      if (total > mo.max_arity()) continue;
      check.expect(counit.on_object(l.xi0(ll)) == a.xi0(mo.map(ll, [&](const auto& x) { return counit.on_object(x); })),
                   [&] { return "counit does not commute with xi0 on a nested list"; });
    }
    // D_1 elements over morphisms with total source arity within the bound
    const std::size_t cap = mo.max_arity();
    std::vector<std::vector<LMor>> by_weight(cap + 1);
    for (const auto& f : morphisms) {
      const std::size_t w = std::max({list_weight(l.source(f)), list_weight(l.target(f)), l.source(f).arity,
                                      l.target(f).arity});
      if (w <= cap) by_weight[w].push_back(f);
    }
    for (std::size_t k = 0; k <= bound; ++k) {
      for (std::size_t rep : mo.orbit_representatives(Degree::morphism, k)) {
        for_each_weighted_tuple(by_weight, k, cap, [&](const std::vector<LMor>& fs) {
          const auto e = mo.make(Degree::morphism, k, rep, fs);
          const auto lhs = counit.on_morphism(l.xi1(e));
          const auto rhs = a.xi1(mo.map(e, [&](const LMor& f) { return counit.on_morphism(f); }));
          check.expect(lhs == rhs, [&] {
            return "counit does not commute with xi1 on " + mo.describe(e, [&](const LMor& f) { return l.describe(f); });
          });
        });
      }
    }
  });
  return report;
}

// U(epsilon) . eta_U = id on U(A), and epsilon_L . L(eta) = id on L(M).
template <Multicategory M, Algebra A>
Report check_triangles(const M& m, const A& a, std::size_t bound) {
  Report report;
  const Monad& mo = m.monad();
  bound = std::min(bound, mo.max_arity());

  const Counit<A> counit(a);
  const auto& lua = counit.source_algebra();
  const auto& ua = lua.multicat();
  report.run("triangle.underlying", [&](Check& check) {
    for (const auto& x : ua.objects(bound)) {
      check.expect(counit.on_object(mo.eta(Degree::object, x)) == x,
                   [&] { return "epsilon . eta moves the object " + ua.describe_object(x); });
    }
    for (const auto& u : all_morphisms(ua, bound)) {
      const auto unit = unit_morphism(lua, ua, u);
      const typename Underlying<A>::Mor back{counit.on_morphism(unit.arrow),
                                            mo.map(unit.decomposition, [&](const auto& l) { return counit.on_object(l); })};
      check.expect(back == u, [&] { return "U(epsilon) . eta fails at " + ua.describe(u); });
    }
  });

  const LAlg<M> lm(m);
  const Underlying<LAlg<M>> ulm(lm);
  report.run("triangle.free", [&](Check& check) {
    const auto objects = lm.objects(bound);
    for (const auto& x : objects) {
      check.expect(lm.xi0(mo.map(x, [&](const auto& b) { return mo.eta(Degree::object, b); })) == x,
                   [&] { return "epsilon . L(eta) moves the object " + lm.describe_object(x); });
      for (const auto& y : objects) {
        for (const auto& e : lm.hom(x, y)) {
          // L(eta) then the counit of L M, both unfolded
          const auto lists = mo.map(e.phi, [&](const auto& f) { return unit_morphism(lm, m, f).arrow; });
          const auto perms = mo.map(mo.map(e.sigma, [&](const auto& b) { return mo.eta(Degree::object, b); }),
                                    [&](const auto& l) { return lm.identity(l); });
          const auto back = lm.compose(lm.xi1(mo.identity(lists)), lm.xi1(perms));
          check.expect(back == e, [&] { return "epsilon . L(eta) fails at " + lm.describe(e); });
        }
      }
    }
  });
  return report;
}

}  // namespace gmcat
