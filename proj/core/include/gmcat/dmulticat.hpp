#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmcat/errors.hpp"
#include "gmcat/fincat.hpp"
#include "gmcat/opmonad.hpp"
#include "gmcat/report.hpp"

namespace gmcat {

struct ObjId {
  std::size_t index = 0;
  friend auto operator<=>(const ObjId&, const ObjId&) = default;
};

struct MorId {
  std::size_t index = 0;
  friend auto operator<=>(const MorId&, const MorId&) = default;
};

// A D-multicategory, possibly infinite. Morphisms are enumerated by target and
// source arity; act is the presheaf action of D_1 M_0 on morphisms
// (defined when T_D(delta) = S(f)) and compose is gamma on
// M_2 = M_1 x_{D_0 M_0} D_0 M_1.
template <class M>
concept Multicategory = requires(const M& m, const typename M::Obj& a, const typename M::Mor& f,
                                 const DElem<typename M::Obj>& delta, const DElem<typename M::Mor>& phi,
                                 std::size_t bound) {
  { m.monad() } -> std::convertible_to<const Monad&>;
  { m.target(f) } -> std::convertible_to<typename M::Obj>;
  { m.source(f) } -> std::convertible_to<DElem<typename M::Obj>>;
  { m.identity(a) } -> std::convertible_to<typename M::Mor>;
  { m.act(f, delta) } -> std::convertible_to<typename M::Mor>;
  { m.compose(f, phi) } -> std::convertible_to<typename M::Mor>;
  { m.objects(bound) } -> std::convertible_to<std::vector<typename M::Obj>>;
  { m.morphisms_into(a, bound) } -> std::convertible_to<std::vector<typename M::Mor>>;
  { m.describe(f) } -> std::convertible_to<std::string>;
  { m.describe_object(a) } -> std::convertible_to<std::string>;
};

// Finite D-multicategory stored as tables. Composites whose arity exceeds the
// largest source arity are outside the data (truncation).
class FinMulticat {
 public:
  using Obj = ObjId;
  using Mor = MorId;

  struct Tables {
    FinSet objects;
    FinSet morphisms;
    std::vector<ObjId> target;
    std::vector<DElem<ObjId>> source;
    std::vector<MorId> identity;
    std::map<std::pair<MorId, DElem<ObjId>>, MorId> action;
    std::map<std::pair<MorId, DElem<MorId>>, MorId> composition;
  };

  // Checks table shapes and canonical forms; axioms are left to validate_multicat.
  FinMulticat(Monad monad, Tables tables);

  const Monad& monad() const { return monad_; }
  const Tables& tables() const { return *tables_; }
  std::size_t max_arity() const { return max_arity_; }

  ObjId target(MorId f) const { return tables_->target.at(f.index); }
  const DElem<ObjId>& source(MorId f) const { return tables_->source.at(f.index); }
  MorId identity(ObjId a) const { return tables_->identity.at(a.index); }
  // Missing entries are errors, never identity defaults.
  MorId act(MorId f, const DElem<ObjId>& delta) const;
  // TruncationError past max_arity, StructuralError for a missing entry.
  MorId compose(MorId f, const DElem<MorId>& phi) const;

  std::vector<ObjId> objects(std::size_t bound = 0) const;
  std::vector<MorId> morphisms() const;
  std::vector<MorId> morphisms_into(ObjId b, std::size_t bound) const;
  std::optional<MorId> find_morphism(std::string_view label) const;
  std::optional<ObjId> find_object(std::string_view label) const;

  std::string describe(MorId f) const { return tables_->morphisms.label(f.index); }
  std::string describe_object(ObjId a) const { return tables_->objects.label(a.index); }

 private:
  Monad monad_;
  std::shared_ptr<const Tables> tables_;
  std::vector<std::vector<MorId>> by_target_;
  std::size_t max_arity_ = 0;
};

// ---------------------------------------------------------------------------
// Composables.

template <class Mor>
struct Composable {
  Mor f;
  DElem<Mor> phi;
  friend bool operator==(const Composable&, const Composable&) = default;
  friend auto operator<=>(const Composable&, const Composable&) = default;
};

// (f, Phi) in M_3 = M_2 x_{D_0 M_1} D_0 M_2, with D_0 T(Phi) = phi.
template <class Mor>
struct Composable3 {
  Composable<Mor> top;
  DElem<Composable<Mor>> inner;
};

template <Multicategory M>
std::string describe_list(const M& m, const DElem<typename M::Mor>& phi) {
  return m.monad().describe(phi, [&](const typename M::Mor& g) { return m.describe(g); });
}

template <Multicategory M>
std::string describe_objects(const M& m, const DElem<typename M::Obj>& e) {
  return m.monad().describe(e, [&](const typename M::Obj& a) { return m.describe_object(a); });
}

template <Multicategory M>
std::size_t arity(const M& m, const typename M::Mor& f) {
  return m.source(f).arity;
}

// All phi in D_0 M_1 with D_0 T(phi) = targets and total source arity within
// [min_total, max_total].
template <Multicategory M>
std::vector<DElem<typename M::Mor>> lists_over(const M& m, const DElem<typename M::Obj>& targets,
                                               std::size_t min_total, std::size_t max_total) {
  using Mor = typename M::Mor;
  const std::size_t n = targets.arity;
  std::vector<std::vector<Mor>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) candidates[i] = m.morphisms_into(targets.xs[i], max_total);
  std::vector<DElem<Mor>> out;
  std::vector<Mor> current;
  current.reserve(n);
  auto rec = [&](auto& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      if (used >= min_total) out.push_back(m.monad().make(Degree::object, n, targets.cell, current));
      return;
    }
    for (const auto& g : candidates[i]) {
      const std::size_t w = arity(m, g);
      if (used + w > max_total) continue;
      current.push_back(g);
      self(self, i + 1, used + w);
      current.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

template <Multicategory M>
std::vector<typename M::Mor> all_morphisms(const M& m, std::size_t bound) {
  std::vector<typename M::Mor> out;
  for (const auto& b : m.objects(bound)) {
    auto into = m.morphisms_into(b, bound);
    out.insert(out.end(), into.begin(), into.end());
  }
  return out;
}

// Composable pairs whose composite has arity at most bound.
template <Multicategory M>
std::vector<Composable<typename M::Mor>> enumerate_M2(const M& m, std::size_t bound) {
  std::vector<Composable<typename M::Mor>> out;
  for (const auto& f : all_morphisms(m, bound)) {
    for (auto& phi : lists_over(m, m.source(f), 0, bound)) out.push_back({f, std::move(phi)});
  }
  return out;
}

template <Multicategory M>
std::vector<Composable3<typename M::Mor>> enumerate_M3(const M& m, std::size_t bound) {
  using Mor = typename M::Mor;
  std::vector<Composable3<Mor>> out;
  for (const auto& top : enumerate_M2(m, bound)) {
    const auto& gs = top.phi.xs;
    const std::size_t n = gs.size();
    std::vector<std::vector<DElem<Mor>>> options(n);
    for (std::size_t i = 0; i < n; ++i) options[i] = lists_over(m, m.source(gs[i]), 0, bound);
    std::vector<Composable<Mor>> current;
    auto rec = [&](auto& self, std::size_t i, std::size_t used) -> void {
      if (i == n) {
        out.push_back({top, m.monad().make(Degree::object, n, top.phi.cell, current)});
        return;
      }
      for (const auto& psi : options[i]) {
        std::size_t w = 0;
        for (const auto& h : psi.xs) w += arity(m, h);
        if (used + w > bound) continue;
        current.push_back({gs[i], psi});
        self(self, i + 1, used + w);
        current.pop_back();
      }
    };
    rec(rec, 0, 0);
  }
  return out;
}

// Compose in the target slots: (gamma(f, phi), mu(D_0 S Phi)).
template <Multicategory M>
Composable<typename M::Mor> gamma_T(const M& m, const Composable3<typename M::Mor>& w) {
  auto lists = m.monad().map(w.inner, [](const Composable<typename M::Mor>& c) { return c.phi; });
  return {m.compose(w.top.f, w.top.phi), m.monad().mu(lists)};
}

// Compose in the source slots: (f, D_0 gamma(Phi)).
template <Multicategory M>
Composable<typename M::Mor> gamma_S(const M& m, const Composable3<typename M::Mor>& w) {
  auto composed = m.monad().map(w.inner, [&](const Composable<typename M::Mor>& c) { return m.compose(c.f, c.phi); });
  return {w.top.f, std::move(composed)};
}

// ---------------------------------------------------------------------------
// Validation.

template <Multicategory M>
Report validate_multicat(const M& m, std::size_t bound) {
  using Obj = typename M::Obj;
  using Mor = typename M::Mor;
  const Monad& mo = m.monad();
  bound = std::min(bound, mo.max_arity());
  Report report;
  const auto objects = m.objects(bound);
  const auto morphisms = all_morphisms(m, bound);
  auto show = [&](const Mor& f) { return m.describe(f); };
  auto show_objs = [&](const DElem<Obj>& e) { return describe_objects(m, e); };

  report.run("unit.ends", [&](Check& check) {
    for (const auto& a : objects) {
      const Mor ia = m.identity(a);
      check.expect(m.source(ia) == mo.eta(Degree::object, a),
                   [&] { return "S(I(" + m.describe_object(a) + ")) is not eta"; });
      check.expect(m.target(ia) == a, [&] { return "T(I(" + m.describe_object(a) + ")) is not the object"; });
    }
  });

  report.run("presheaf.structure", [&](Check& check) {
    for (const auto& f : morphisms) {
      for (const auto& delta : mo.morphisms_into(m.source(f))) {
        const Mor moved = m.act(f, delta);
        check.expect(m.source(moved) == mo.source(delta),
                     [&] { return show(f) + " . " + show_objs(delta) + " has the wrong source"; });
        check.expect(m.target(moved) == m.target(f),
                     [&] { return show(f) + " . " + show_objs(delta) + " changes the target"; });
      }
    }
  });

  report.run("presheaf.unit", [&](Check& check) {
    for (const auto& f : morphisms) {
      check.expect(m.act(f, mo.identity(m.source(f))) == f, [&] { return "identity moves " + show(f); });
    }
  });

  report.run("presheaf.associativity", [&](Check& check) {
    for (const auto& f : morphisms) {
      for (const auto& d1 : mo.morphisms_into(m.source(f))) {
        const Mor once = m.act(f, d1);
        for (const auto& d2 : mo.morphisms_into(mo.source(d1))) {
          check.expect(m.act(once, d2) == m.act(f, mo.compose(d1, d2)), [&] {
            return "(" + show(f) + " . " + show_objs(d1) + ") . " + show_objs(d2) + " differs from the composite action";
          });
        }
      }
    }
  });

  const auto m2 = enumerate_M2(m, bound);

  report.run("composition.ends", [&](Check& check) {
    for (const auto& [f, phi] : m2) {
      const Mor h = m.compose(f, phi);
      check.expect(m.target(h) == m.target(f),
                   [&] { return "gamma(" + show(f) + "; " + describe_list(m, phi) + ") changes the target"; });
      auto sources = mo.map(phi, [&](const Mor& g) { return m.source(g); });
      check.expect(m.source(h) == mo.mu(sources), [&] {
        return "gamma(" + show(f) + "; " + describe_list(m, phi) + ") source is not the concatenation";
      });
    }
  });

  report.run("composition.unit", [&](Check& check) {
    for (const auto& f : morphisms) {
      const Mor left = m.compose(m.identity(m.target(f)), mo.eta(Degree::object, f));
      check.expect(left == f, [&] { return "left unit fails at " + show(f); });
      if (arity(m, f) > bound) continue;
      const Mor right = m.compose(f, mo.map(m.source(f), [&](const Obj& a) { return m.identity(a); }));
      check.expect(right == f, [&] { return "right unit fails at " + show(f); });
    }
  });

  // gamma(f . D_1 T(w), S_D(w)) = gamma(f, T_D(w)) . theta(w) for w in D_1 M_1 over phi.
  report.run("composition.outer_equivariance", [&](Check& check) {
    auto src = [&](const Mor& g) { return m.source(g); };
    for (const auto& [f, phi] : m2) {
      const Mor base = m.compose(f, phi);
      for (const auto& w : mo.morphisms_into(phi)) {
        const auto moved_targets = mo.map(w, [&](const Mor& g) { return m.target(g); });
        const Mor lhs = m.compose(m.act(f, moved_targets), mo.source(w));
        const Mor rhs = m.act(base, theta(mo, w, src));
        check.expect(lhs == rhs, [&] {
          return "gamma(" + show(f) + "; " + describe_list(m, phi) + ") is not equivariant along " +
                 mo.describe(w, show);
        });
      }
    }
  });

  // gamma(f, D_0 psi(phi, tau)) = gamma(f, phi) . mu(I_D(tau)).
  report.run("composition.inner_equivariance", [&](Check& check) {
    for (const auto& [f, phi] : m2) {
      const Mor base = m.compose(f, phi);
      const std::size_t n = phi.arity;
      std::vector<std::vector<DElem<Obj>>> options(n);
      for (std::size_t i = 0; i < n; ++i) options[i] = mo.morphisms_into(m.source(phi.xs[i]));
      std::vector<DElem<Obj>> taus;
      auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == n) {
          std::vector<Mor> acted;
          for (std::size_t k = 0; k < n; ++k) acted.push_back(m.act(phi.xs[k], taus[k]));
          const auto tau = mo.make(Degree::object, n, phi.cell, taus);
          const Mor lhs = m.compose(f, mo.make(Degree::object, n, phi.cell, acted));
          const Mor rhs = m.act(base, mo.mu(mo.identity(tau)));
          check.expect(lhs == rhs, [&] {
            std::string w = "gamma(" + show(f) + "; " + describe_list(m, phi) + ") with";
            for (const auto& t : taus) w += " " + show_objs(t);
            return w + " is not equivariant";
          });
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
  });

  report.run("composition.associativity", [&](Check& check) {
    for (const auto& w : enumerate_M3(m, bound)) {
      const auto t = gamma_T(m, w);
      const auto s = gamma_S(m, w);
      check.expect(m.compose(t.f, t.phi) == m.compose(s.f, s.phi), [&] {
        std::string out = "associativity fails at gamma(" + show(w.top.f) + "; " + describe_list(m, w.top.phi) + ") then";
        for (const auto& c : w.inner.xs) out += " " + describe_list(m, c.phi);
        return out;
      });
    }
  });

  return report;
}

// Checklist for a map of D-multicategories: preserves I, T, S, gamma and the
// presheaf action, evaluated on every element of the source within bound.
template <Multicategory MA, Multicategory MB, class OnObj, class OnMor>
Report check_multicat_map(const MA& a, const MB& b, OnObj&& on_obj, OnMor&& on_mor, std::size_t bound) {
  using Mor = typename MA::Mor;
  const Monad& mo = a.monad();
  bound = std::min(bound, mo.max_arity());
  Report report;
  const auto morphisms = all_morphisms(a, bound);
  auto show = [&](const Mor& f) { return a.describe(f); };

  report.run("map.identity", [&](Check& check) {
    for (const auto& x : a.objects(bound)) {
      check.expect(on_mor(a.identity(x)) == b.identity(on_obj(x)),
                   [&] { return "identity of " + a.describe_object(x) + " is not preserved"; });
    }
  });
  report.run("map.target", [&](Check& check) {
    for (const auto& f : morphisms) {
      check.expect(b.target(on_mor(f)) == on_obj(a.target(f)), [&] { return "target of " + show(f) + " is not preserved"; });
    }
  });
  report.run("map.source", [&](Check& check) {
    for (const auto& f : morphisms) {
      check.expect(b.source(on_mor(f)) == mo.map(a.source(f), on_obj),
                   [&] { return "source of " + show(f) + " is not preserved"; });
    }
  });
  report.run("map.presheaf", [&](Check& check) {
    for (const auto& f : morphisms) {
      for (const auto& delta : mo.morphisms_into(a.source(f))) {
        check.expect(on_mor(a.act(f, delta)) == b.act(on_mor(f), mo.map(delta, on_obj)), [&] {
          return "action of " + describe_objects(a, delta) + " on " + show(f) + " is not preserved";
        });
      }
    }
  });
  report.run("map.composition", [&](Check& check) {
    for (const auto& [f, phi] : enumerate_M2(a, bound)) {
      check.expect(on_mor(a.compose(f, phi)) == b.compose(on_mor(f), mo.map(phi, on_mor)),
                   [&] { return "gamma(" + show(f) + "; " + describe_list(a, phi) + ") is not preserved"; });
    }
  });
  return report;
}

// Materializes a multicategory within an arity bound. Composites past the
// bound are left out, matching FinMulticat's truncation.
template <Multicategory M>
FinMulticat tabulate(const M& m, std::size_t bound) {
  using Obj = typename M::Obj;
  using Mor = typename M::Mor;
  const Monad& mo = m.monad();
  std::map<Obj, std::string> obj_label;
  std::map<Mor, std::string> mor_label;
  for (const auto& a : m.objects(bound)) obj_label.emplace(a, m.describe_object(a));
  for (const auto& f : all_morphisms(m, bound)) mor_label.emplace(f, m.describe(f));
  auto labels_of = [](const auto& table) {
    std::vector<std::string> out;
    for (const auto& [key, label] : table) out.push_back(label);
    return out;
  };
  FinMulticat::Tables t;
  t.objects = FinSet(labels_of(obj_label));
  t.morphisms = FinSet(labels_of(mor_label));
  // FinSet orders by label; ids follow that order.
  auto oid = [&](const Obj& a) { return ObjId{t.objects.index_of(obj_label.at(a))}; };
  auto mid = [&](const Mor& f) {
    auto it = mor_label.find(f);
    if (it == mor_label.end()) throw TruncationError("tabulate: " + m.describe(f) + " lies outside the bound");
    return MorId{t.morphisms.index_of(it->second)};
  };
  t.target.resize(mor_label.size());
  t.source.resize(mor_label.size());
  t.identity.resize(obj_label.size());
  for (const auto& [a, label] : obj_label) t.identity[oid(a).index] = mid(m.identity(a));
  for (const auto& [f, label] : mor_label) {
    const MorId id = mid(f);
    t.target[id.index] = oid(m.target(f));
    t.source[id.index] = mo.map(m.source(f), oid);
    for (const auto& delta : mo.morphisms_into(m.source(f))) t.action[{id, mo.map(delta, oid)}] = mid(m.act(f, delta));
  }
  for (const auto& [f, phi] : enumerate_M2(m, bound)) t.composition[{mid(f), mo.map(phi, mid)}] = mid(m.compose(f, phi));
  return FinMulticat(mo, std::move(t));
}

// ---------------------------------------------------------------------------
// Presheaf forms of the action on M_1.

// M_1 as a presheaf over D(M_0^delta) truncated at max_arity, structure map S.
Presheaf source_presheaf(const FinMulticat& m);
// The same action over D(*), pushed along D(epsilon): D(M_0^delta) -> D(*).
Presheaf point_presheaf(const FinMulticat& m);
// D(epsilon) truncated at the multicategory's max arity.
CatFunctor point_cover(const FinMulticat& m);

// ---------------------------------------------------------------------------
// Classical multicategories.

struct ClassicalOperation {
  std::string label;
  std::vector<std::string> sources;
  std::string target;
};

struct ClassicalMulticat {
  bool symmetric = false;
  std::vector<std::string> objects;
  std::vector<ClassicalOperation> operations;
  std::map<std::string, std::string> identities;
  // (f, sigma) -> f.sigma, whose sources are listed as (a_sigma(1), .., a_sigma(n)).
  std::map<std::pair<std::string, Perm>, std::string> action;
  // (f, (g_1, .., g_n)) -> gamma(f; g_1, .., g_n).
  std::map<std::pair<std::string, std::vector<std::string>>, std::string> composition;
};

// Encodes over the Barratt-Eccles (symmetric) or associativity (non-symmetric)
// monad and validates; violations raise StructuralError naming a witness.
FinMulticat from_symmetric(const ClassicalMulticat& c, const Monad& monad);
FinMulticat from_nonsymmetric(const ClassicalMulticat& c, const Monad& monad);
// Encoding without the final validation (for inspecting broken inputs).
FinMulticat encode_classical(const ClassicalMulticat& c, const Monad& monad);

// One object, one n-ary operation m<n> for each n <= max_arity.
ClassicalMulticat terminal_multicat(std::size_t max_arity, bool symmetric);
// One object, n-ary operations the words of length n with the word action.
ClassicalMulticat associative_multicat(std::size_t max_arity);
// Objects a, b; a binary m: (a, a) -> b and its swap, a constant p: () -> a, and composites.
ClassicalMulticat two_object_multicat();

}  // namespace gmcat
