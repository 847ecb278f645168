#include "gmcat/dmulticat.hpp"

#include <algorithm>
#include <numeric>

#include "gmcat/errors.hpp"

namespace gmcat {

FinMulticat::FinMulticat(Monad monad, Tables tables)
    : monad_(std::move(monad)), tables_(std::make_shared<const Tables>(std::move(tables))) {
  const Tables& t = *tables_;
  const std::size_t n_obj = t.objects.size();
  const std::size_t n_mor = t.morphisms.size();
  if (t.target.size() != n_mor || t.source.size() != n_mor) {
    throw StructuralError("multicategory: target and source tables must list every morphism");
  }
  if (t.identity.size() != n_obj) throw StructuralError("multicategory: identity table must list every object");
  auto check_obj = [&](ObjId a, const std::string& where) {
    if (a.index >= n_obj) throw StructuralError("multicategory: object index out of range in " + where);
  };
  auto check_mor = [&](MorId f, const std::string& where) {
    if (f.index >= n_mor) throw StructuralError("multicategory: morphism index out of range in " + where);
  };
  by_target_.resize(n_obj);
  for (std::size_t i = 0; i < n_mor; ++i) {
    const std::string& label = t.morphisms.label(i);
    check_obj(t.target[i], "target of " + label);
    const auto& s = t.source[i];
    if (s.degree != Degree::object) throw StructuralError("multicategory: source of " + label + " must have degree 0");
    if (s.arity > monad_.max_arity()) {
      throw TruncationError("multicategory: source of " + label + " exceeds the operad truncation");
    }
    for (const auto& a : s.xs) check_obj(a, "source of " + label);
    if (monad_.make(s.degree, s.arity, s.cell, s.xs) != s) {
      throw StructuralError("multicategory: source of " + label + " is not in canonical form");
    }
    max_arity_ = std::max(max_arity_, s.arity);
    by_target_[t.target[i].index].push_back(MorId{i});
  }
  for (const auto& f : t.identity) check_mor(f, "identity table");
  for (const auto& [key, value] : t.action) {
    check_mor(key.first, "action");
    check_mor(value, "action");
    if (key.second.degree != Degree::morphism || monad_.target(key.second) != source(key.first)) {
      throw StructuralError("multicategory: action entry on " + describe(key.first) +
                            " has a permutation whose target is not its source");
    }
  }
  for (const auto& [key, value] : t.composition) {
    check_mor(key.first, "composition");
    check_mor(value, "composition");
    for (const auto& g : key.second.xs) check_mor(g, "composition");
    auto targets = monad_.map(key.second, [&](MorId g) { return target(g); });
    if (key.second.degree != Degree::object || targets != source(key.first)) {
      throw StructuralError("multicategory: composition entry on " + describe(key.first) +
                            " lists morphisms whose targets do not match its source");
    }
  }
}

MorId FinMulticat::act(MorId f, const DElem<ObjId>& delta) const {
  auto it = tables_->action.find({f, delta});
  if (it == tables_->action.end()) {
    throw StructuralError("multicategory: no action entry for " + describe(f) + " . " +
                          monad_.describe(delta, [&](ObjId a) { return describe_object(a); }));
  }
  return it->second;
}

MorId FinMulticat::compose(MorId f, const DElem<MorId>& phi) const {
  std::size_t total = 0;
  for (const auto& g : phi.xs) total += source(g).arity;
  if (total > max_arity_) {
    throw TruncationError("multicategory: composite arity " + std::to_string(total) + " exceeds " +
                          std::to_string(max_arity_));
  }
  auto it = tables_->composition.find({f, phi});
  if (it == tables_->composition.end()) {
    throw StructuralError("multicategory: no composite for gamma(" + describe(f) + "; " +
                          monad_.describe(phi, [&](MorId g) { return describe(g); }) + ")");
  }
  return it->second;
}

std::vector<ObjId> FinMulticat::objects(std::size_t) const {
  std::vector<ObjId> out;
  for (std::size_t i = 0; i < tables_->objects.size(); ++i) out.push_back(ObjId{i});
  return out;
}

std::vector<MorId> FinMulticat::morphisms() const {
  std::vector<MorId> out;
  for (std::size_t i = 0; i < tables_->morphisms.size(); ++i) out.push_back(MorId{i});
  return out;
}

std::vector<MorId> FinMulticat::morphisms_into(ObjId b, std::size_t bound) const {
  std::vector<MorId> out;
  for (const auto& f : by_target_.at(b.index)) {
    if (source(f).arity <= bound) out.push_back(f);
  }
  return out;
}

std::optional<MorId> FinMulticat::find_morphism(std::string_view label) const {
  if (auto i = tables_->morphisms.find(label)) return MorId{*i};
  return std::nullopt;
}

std::optional<ObjId> FinMulticat::find_object(std::string_view label) const {
  if (auto i = tables_->objects.find(label)) return ObjId{*i};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

DElem<std::size_t> as_indices(const Monad& m, const DElem<ObjId>& e) {
  return m.map(e, [](ObjId a) { return a.index; });
}

}  // namespace

Presheaf source_presheaf(const FinMulticat& m) {
  const Monad& mo = m.monad();
  const auto dc = apply_to_category(mo, FinCategory::discrete(m.tables().objects), m.max_arity());
  const auto morphisms = m.morphisms();
  std::vector<std::size_t> eps;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> action;
  for (const auto& f : morphisms) {
    eps.push_back(dc.object_index.at(as_indices(mo, m.source(f))));
    for (const auto& delta : mo.morphisms_into(m.source(f))) {
      action[{f.index, dc.morphism_index.at(as_indices(mo, delta))}] = m.act(f, delta).index;
    }
  }
  return Presheaf{dc.category, m.tables().morphisms, FinFn(m.tables().morphisms, dc.category.objects, eps),
                  std::move(action)};
}

CatFunctor point_cover(const FinMulticat& m) {
  const Monad& mo = m.monad();
  const FinCategory discrete = FinCategory::discrete(m.tables().objects);
  const FinCategory point = FinCategory::terminal();
  CatFunctor eps{discrete, point, FinFn(discrete.objects, point.objects, std::vector<std::size_t>(discrete.objects.size(), 0)),
                 FinFn(discrete.morphisms, point.morphisms, std::vector<std::size_t>(discrete.morphisms.size(), 0))};
  const auto src = apply_to_category(mo, discrete, m.max_arity());
  const auto tgt = apply_to_category(mo, point, m.max_arity());
  return apply_to_functor(mo, eps, src, tgt);
}

Presheaf point_presheaf(const FinMulticat& m) { return push_presheaf(point_cover(m), source_presheaf(m)); }

// ---------------------------------------------------------------------------
// Classical encoders.

namespace {

enum class WordKind { symmetric, nonsymmetric };

FinMulticat encode(const ClassicalMulticat& c, const Monad& monad) {
  const CatOperad& op = monad.operad();
  FinSet objects(c.objects);
  std::vector<std::string> labels;
  for (const auto& o : c.operations) labels.push_back(o.label);
  FinSet morphisms(labels);
  if (morphisms.size() != labels.size()) throw StructuralError("classical multicategory: duplicate operation labels");

  FinMulticat::Tables t;
  t.objects = objects;
  t.morphisms = morphisms;
  auto object_id = [&](const std::string& label) {
    auto i = objects.find(label);
    if (!i) throw StructuralError("classical multicategory: unknown object " + label);
    return ObjId{*i};
  };
  auto morphism_id = [&](const std::string& label) {
    auto i = morphisms.find(label);
    if (!i) throw StructuralError("classical multicategory: unknown operation " + label);
    return MorId{*i};
  };
  auto identity_word = [&](std::size_t n) {
    if (n > op.max_level()) {
      throw TruncationError("classical multicategory: arity " + std::to_string(n) + " exceeds the operad truncation");
    }
    return op.level(n).category.objects.index_of(Perm::identity(n).str());
  };

  // Morphisms are indexed by label order; operations are looked up by label.
  std::map<std::string, const ClassicalOperation*> by_label;
  for (const auto& o : c.operations) by_label[o.label] = &o;
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto& o = *by_label.at(morphisms.label(i));
    std::vector<ObjId> xs;
    for (const auto& s : o.sources) xs.push_back(object_id(s));
    const std::size_t n = xs.size();
    t.target.push_back(object_id(o.target));
    t.source.push_back(monad.make(Degree::object, n, identity_word(n), std::move(xs)));
  }
  t.identity.resize(objects.size());
  for (std::size_t a = 0; a < objects.size(); ++a) {
    auto it = c.identities.find(objects.label(a));
    if (it == c.identities.end()) throw StructuralError("classical multicategory: no identity for " + objects.label(a));
    t.identity[a] = morphism_id(it->second);
  }

  // Action: delta = [id <- sigma; sources] moves f to f.sigma.
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const MorId f{i};
    const auto& s = t.source[i];
    const std::size_t n = s.arity;
    const auto& level = op.level(n);
    for (const auto& sigma : level.group) {
      const std::string cell_label = Perm::identity(n).str() + "<-" + sigma.str();
      auto cell = level.category.morphisms.find(cell_label);
      if (!cell) continue;  // non-symmetric operads only carry identities
      MorId moved = f;
      if (!sigma.is_identity()) {
        auto it = c.action.find({morphisms.label(i), sigma});
        if (it == c.action.end()) {
          throw StructuralError("classical multicategory: no action of " + sigma.str() + " on " + morphisms.label(i));
        }
        moved = morphism_id(it->second);
      } else if (auto it = c.action.find({morphisms.label(i), sigma}); it != c.action.end()) {
        moved = morphism_id(it->second);
      }
      t.action[{f, monad.make(Degree::morphism, n, *cell, s.xs)}] = moved;
    }
  }

  for (const auto& [key, result] : c.composition) {
    const MorId f = morphism_id(key.first);
    std::vector<MorId> gs;
    for (const auto& g : key.second) gs.push_back(morphism_id(g));
    const std::size_t n = gs.size();
    if (n != t.source[f.index].arity) {
      throw StructuralError("classical multicategory: gamma(" + key.first + "; ...) lists " + std::to_string(n) +
                            " operations for arity " + std::to_string(t.source[f.index].arity));
    }
    auto phi = monad.make(Degree::object, n, identity_word(n), std::move(gs));
    t.composition[{f, std::move(phi)}] = morphism_id(result);
  }
  return FinMulticat(monad, std::move(t));
}

FinMulticat encode_checked(const ClassicalMulticat& c, const Monad& monad, WordKind kind) {
  const std::string& name = monad.operad().name();
  if (kind == WordKind::symmetric && (!c.symmetric || name != "barratt-eccles")) {
    throw PreconditionError("symmetric encoding needs a symmetric multicategory and the barratt-eccles monad");
  }
  if (kind == WordKind::nonsymmetric && name != "associativity") {
    throw PreconditionError("non-symmetric encoding needs the associativity monad");
  }
  FinMulticat m = encode(c, monad);
  const Report report = validate_multicat(m, m.max_arity());
  if (!report.ok()) {
    const auto violations = report.violations();
    throw StructuralError("classical multicategory axioms fail: " +
                          (violations.empty() ? std::string("bound exceeded") : violations.front()));
  }
  return m;
}

}  // namespace

FinMulticat encode_classical(const ClassicalMulticat& c, const Monad& monad) { return encode(c, monad); }

FinMulticat from_symmetric(const ClassicalMulticat& c, const Monad& monad) {
  return encode_checked(c, monad, WordKind::symmetric);
}

FinMulticat from_nonsymmetric(const ClassicalMulticat& c, const Monad& monad) {
  return encode_checked(c, monad, WordKind::nonsymmetric);
}

// ---------------------------------------------------------------------------
// Builtins.

namespace {

// Compositions of total <= bound into k ordered parts.
void for_each_composition(std::size_t k, std::size_t bound, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> parts;
  auto rec = [&](auto& self, std::size_t left) -> void {
    if (parts.size() == k) {
      fn(parts);
      return;
    }
    for (std::size_t w = 0; w <= left; ++w) {
      parts.push_back(w);
      self(self, left - w);
      parts.pop_back();
    }
  };
  rec(rec, bound);
}

}  // namespace

ClassicalMulticat terminal_multicat(std::size_t max_arity, bool symmetric) {
  if (max_arity == 0) throw PreconditionError("terminal multicategory needs arity at least 1 for its identity");
  ClassicalMulticat c;
  c.symmetric = symmetric;
  c.objects = {"a"};
  auto name = [](std::size_t n) { return "m" + std::to_string(n); };
  for (std::size_t n = 0; n <= max_arity; ++n) {
    c.operations.push_back({name(n), std::vector<std::string>(n, "a"), "a"});
    if (symmetric) {
      for (const auto& sigma : all_perms(n)) {
        if (!sigma.is_identity()) c.action[{name(n), sigma}] = name(n);
      }
    }
    for_each_composition(n, max_arity, [&](const std::vector<std::size_t>& parts) {
      std::vector<std::string> gs;
      std::size_t total = 0;
      for (auto k : parts) {
        gs.push_back(name(k));
        total += k;
      }
      c.composition[{name(n), gs}] = name(total);
    });
  }
  c.identities["a"] = name(1);
  return c;
}

ClassicalMulticat associative_multicat(std::size_t max_arity) {
  const CatOperad op = barratt_eccles(std::max<std::size_t>(max_arity, 1));
  ClassicalMulticat c;
  c.symmetric = true;
  c.objects = {"a"};
  auto name = [](const Perm& w) { return "w" + w.str(); };
  for (std::size_t n = 0; n <= max_arity; ++n) {
    const auto& level = op.level(n);
    for (std::size_t w = 0; w < level.category.objects.size(); ++w) {
      const Perm word = parse_word(level.category.objects.label(w));
      c.operations.push_back({name(word), std::vector<std::string>(n, "a"), "a"});
      for (std::size_t g = 1; g < level.group.size(); ++g) {
        const auto moved = level.act(Degree::object, w, g);
        c.action[{name(word), level.group[g]}] = name(parse_word(level.category.objects.label(moved)));
      }
      for_each_composition(n, max_arity, [&](const std::vector<std::size_t>& parts) {
        // every choice of inner words with these lengths
        std::vector<std::vector<std::size_t>> choice(n);
        std::vector<Cell> inner(n);
        auto rec = [&](auto& self, std::size_t i) -> void {
          if (i == n) {
            std::vector<std::string> gs;
            for (const auto& cell : inner) gs.push_back(name(parse_word(op.label(Degree::object, cell))));
            const std::size_t total = std::accumulate(parts.begin(), parts.end(), std::size_t{0});
            const std::size_t result = op.compose(Degree::object, {n, w}, inner);
            c.composition[{name(word), gs}] = name(parse_word(op.label(Degree::object, {total, result})));
            return;
          }
          for (std::size_t v = 0; v < op.level(parts[i]).category.objects.size(); ++v) {
            inner[i] = {parts[i], v};
            self(self, i + 1);
          }
        };
        rec(rec, 0);
      });
    }
  }
  c.identities["a"] = name(Perm::identity(1));
  return c;
}

ClassicalMulticat two_object_multicat() {
  ClassicalMulticat c;
  c.symmetric = true;
  c.objects = {"a", "b"};
  c.operations = {
      {"id_a", {"a"}, "a"}, {"id_b", {"b"}, "b"}, {"m", {"a", "a"}, "b"}, {"m'", {"a", "a"}, "b"},
      {"p", {}, "a"},       {"q1", {"a"}, "b"},   {"q2", {"a"}, "b"},      {"r", {}, "b"},
  };
  c.identities = {{"a", "id_a"}, {"b", "id_b"}};
  const Perm swap({2, 1});
  c.action[{"m", swap}] = "m'";
  c.action[{"m'", swap}] = "m";
  auto& g = c.composition;
  g[{"id_a", {"id_a"}}] = "id_a";
  g[{"id_a", {"p"}}] = "p";
  for (const char* x : {"id_b", "m", "m'", "q1", "q2", "r"}) g[{"id_b", {x}}] = x;
  g[{"m", {"id_a", "id_a"}}] = "m";
  g[{"m", {"p", "id_a"}}] = "q1";
  g[{"m", {"id_a", "p"}}] = "q2";
  g[{"m", {"p", "p"}}] = "r";
  g[{"m'", {"id_a", "id_a"}}] = "m'";
  g[{"m'", {"p", "id_a"}}] = "q2";
  g[{"m'", {"id_a", "p"}}] = "q1";
  g[{"m'", {"p", "p"}}] = "r";
  for (const char* q : {"q1", "q2"}) {
    g[{q, {"id_a"}}] = q;
    g[{q, {"p"}}] = "r";
  }
  g[{"p", {}}] = "p";
  g[{"r", {}}] = "r";
  return c;
}

}  // namespace gmcat
