#include "gmcat/opmonad.hpp"

#include <random>

namespace gmcat {

Monad::Monad(CatOperad operad, Fault fault) : Monad(std::move(operad), true, fault) {}

Monad Monad::without_freeness_check(CatOperad operad) { return Monad(std::move(operad), false, Fault::none); }

Monad::Monad(CatOperad operad, bool free, Fault fault) : free_(free), fault_(fault) {
  if (free) {
    if (auto w = sigma_freeness_witness(operad)) {
      throw FreenessError(operad.name() + " is not Sigma-free: " + w->element.str() + " fixes " +
                          std::string(to_string(w->degree)) + " " + w->cell + " in arity " +
                          std::to_string(w->arity));
    }
  }
  operad_ = std::make_shared<const CatOperad>(std::move(operad));
  std::vector<LevelTables> tables;
  for (std::size_t n = 0; n <= operad_->max_level(); ++n) {
    const auto& lvl = operad_->level(n);
    const std::size_t group = lvl.group.size();
    LevelTables t;
    if (free_) {
      std::map<Perm, std::size_t> index;
      for (std::size_t g = 0; g < group; ++g) index.emplace(lvl.group[g], g);
      t.mult.resize(group * group);
      t.inv.resize(group);
      for (std::size_t g = 0; g < group; ++g) {
        t.inv[g] = index.at(lvl.group[g].inverse());
        for (std::size_t h = 0; h < group; ++h) t.mult[g * group + h] = index.at(lvl.group[g] * lvl.group[h]);
      }
    }
    for (Degree degree : {Degree::object, Degree::morphism}) {
      const auto d = static_cast<std::size_t>(degree);
      const std::size_t cells = lvl.cells(degree);
      t.rep[d].resize(cells);
      t.to_rep[d].resize(cells);
      for (std::size_t c = 0; c < cells; ++c) {
        std::size_t best = c, best_g = 0;
        for (std::size_t g = 1; g < group; ++g) {
          std::size_t moved = lvl.act(degree, c, g);
          if (moved < best) {
            best = moved;
            best_g = g;
          }
        }
        t.rep[d][c] = best;
        t.to_rep[d][c] = best_g;
        if (best == c) t.reps[d].push_back(c);
      }
    }
    t.by_target.resize(lvl.category.objects.size());
    for (std::size_t mcell = 0; mcell < lvl.category.morphisms.size(); ++mcell) {
      t.by_target[lvl.category.target(mcell)].push_back(mcell);
    }
    tables.push_back(std::move(t));
  }
  tables_ = std::make_shared<const std::vector<LevelTables>>(std::move(tables));
}

const Monad::LevelTables& Monad::tables(std::size_t arity) const {
  if (arity >= tables_->size()) {
    throw TruncationError("arity " + std::to_string(arity) + " exceeds operad truncation " +
                          std::to_string(max_arity()));
  }
  return (*tables_)[arity];
}

void Monad::check_shape(Degree degree, std::size_t arity, std::size_t cell, std::size_t count) const {
  if (arity > max_arity()) {
    throw TruncationError("arity " + std::to_string(arity) + " exceeds operad truncation " +
                          std::to_string(max_arity()));
  }
  if (cell >= operad_->level(arity).cells(degree)) throw StructuralError("element names an unknown operad cell");
  if (count != arity) throw StructuralError("element has the wrong number of coordinates");
}

std::size_t Monad::multiply(std::size_t arity, std::size_t g, std::size_t h) const {
  const auto& t = tables(arity);
  if (t.mult.empty()) throw FreenessError("group tables are only kept for Sigma-free operads");
  return t.mult[g * t.inv.size() + h];
}

std::size_t Monad::inverse(std::size_t arity, std::size_t g) const {
  const auto& t = tables(arity);
  if (t.inv.empty()) throw FreenessError("group tables are only kept for Sigma-free operads");
  return t.inv[g];
}

std::size_t Monad::align(Degree degree, std::size_t arity, std::size_t from, std::size_t to) const {
  const auto& t = tables(arity);
  const auto d = static_cast<std::size_t>(degree);
  const std::size_t g = multiply(arity, t.to_rep[d][from], inverse(arity, t.to_rep[d][to]));
  if (operad_->act(degree, arity, from, g) != to) {
    throw InvariantViolation("align: cells lie in different orbits");
  }
  return g;
}

const std::vector<std::size_t>& Monad::orbit_representatives(Degree degree, std::size_t arity) const {
  return tables(arity).reps[static_cast<std::size_t>(degree)];
}

const std::vector<std::size_t>& Monad::morphisms_with_target(std::size_t arity, std::size_t object) const {
  return tables(arity).by_target.at(object);
}

DCategory apply_to_category(const Monad& m, const FinCategory& c, std::size_t bound) {
  DCategory out;
  std::vector<std::size_t> obj_ids(c.objects.size()), mor_ids(c.morphisms.size());
  for (std::size_t i = 0; i < obj_ids.size(); ++i) obj_ids[i] = i;
  for (std::size_t i = 0; i < mor_ids.size(); ++i) mor_ids[i] = i;
  auto objects = m.elements_up_to(Degree::object, obj_ids, bound);
  auto morphisms = m.elements_up_to(Degree::morphism, mor_ids, bound);
  auto obj_label = [&](const DElem<std::size_t>& e) {
    return m.describe(e, [&](std::size_t x) { return c.objects.label(x); });
  };
  auto mor_label = [&](const DElem<std::size_t>& e) {
    return m.describe(e, [&](std::size_t x) { return c.morphisms.label(x); });
  };
  auto src_of = [&](const DElem<std::size_t>& e) { return m.map(m.source(e), [&](std::size_t x) { return c.source(x); }); };
  auto tgt_of = [&](const DElem<std::size_t>& e) { return m.map(m.target(e), [&](std::size_t x) { return c.target(x); }); };
  CategoryBuilder builder;
  for (const auto& o : objects) builder.add_object(obj_label(o));
  std::map<DElem<std::size_t>, std::vector<std::size_t>> into;
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto& e = morphisms[i];
    builder.add_morphism(mor_label(e), obj_label(src_of(e)), obj_label(tgt_of(e)));
    into[tgt_of(e)].push_back(i);
  }
  for (const auto& o : objects) {
    builder.set_identity(obj_label(o), mor_label(m.map(m.identity(o), [&](std::size_t x) { return c.identity(x); })));
  }
  auto compose_c = [&](std::size_t g, std::size_t f) { return c.compose_or_throw(g, f); };
  for (const auto& g : morphisms) {
    auto it = into.find(src_of(g));
    if (it == into.end()) continue;
    for (std::size_t fi : it->second) {
      builder.add_composite(mor_label(g), mor_label(morphisms[fi]),
                            mor_label(m.compose_with(g, morphisms[fi], compose_c)));
    }
  }
  out.category = builder.build();
  out.objects.resize(objects.size());
  out.morphisms.resize(morphisms.size());
  for (auto& o : objects) {
    std::size_t idx = out.category.objects.index_of(obj_label(o));
    out.object_index[o] = idx;
    out.objects[idx] = std::move(o);
  }
  for (auto& e : morphisms) {
    std::size_t idx = out.category.morphisms.index_of(mor_label(e));
    out.morphism_index[e] = idx;
    out.morphisms[idx] = std::move(e);
  }
  return out;
}

CatFunctor apply_to_functor(const Monad& m, const CatFunctor& f, const DCategory& src, const DCategory& tgt) {
  std::vector<std::size_t> objs, mors;
  for (const auto& o : src.objects) {
    objs.push_back(tgt.object_index.at(m.map(o, [&](std::size_t x) { return f.on_objects(x); })));
  }
  for (const auto& e : src.morphisms) {
    mors.push_back(tgt.morphism_index.at(m.map(e, [&](std::size_t x) { return f.on_morphisms(x); })));
  }
  return {src.category, tgt.category, FinFn(src.category.objects, tgt.category.objects, std::move(objs)),
          FinFn(src.category.morphisms, tgt.category.morphisms, std::move(mors))};
}

namespace {

using Elem = DElem<std::size_t>;

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

Elem push(const Monad& m, const Elem& e, const std::vector<std::size_t>& table) {
  return m.map(e, [&](std::size_t x) { return table[x]; });
}

std::string show_fn(const std::vector<std::size_t>& table) {
  std::string out = "(";
  for (std::size_t i = 0; i < table.size(); ++i) out += (i ? "," : "") + std::to_string(table[i]);
  return out + ")";
}

std::string show_elem(const Monad& m, const Elem& e) {
  return m.describe(e, [](std::size_t x) { return std::to_string(x); });
}

std::string show_nested(const Monad& m, const DElem<Elem>& e) {
  return m.describe(e, [&](const Elem& x) { return show_elem(m, x); });
}

void check_square(const Monad& m, Degree degree, const std::vector<std::size_t>& f, const std::vector<std::size_t>& g,
                  std::size_t bound, Check& check) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (f[a] == g[b]) pairs.emplace_back(a, b);
    }
  }
  std::vector<std::size_t> p1, p2;
  for (const auto& [a, b] : pairs) {
    p1.push_back(a);
    p2.push_back(b);
  }
  std::map<Elem, std::size_t> over_a, over_b;
  for (const auto& e : m.elements_up_to(degree, iota_vec(f.size()), bound)) ++over_a[push(m, e, f)];
  for (const auto& e : m.elements_up_to(degree, iota_vec(g.size()), bound)) ++over_b[push(m, e, g)];
  std::size_t expected = 0;
  for (const auto& [z, count] : over_a) {
    auto it = over_b.find(z);
    if (it != over_b.end()) expected += count * it->second;
  }
  std::set<std::pair<Elem, Elem>> seen;
  bool injective = true, commutes = true;
  std::size_t total = 0;
  for (const auto& e : m.elements_up_to(degree, iota_vec(pairs.size()), bound)) {
    ++total;
    Elem a = push(m, e, p1), b = push(m, e, p2);
    if (push(m, a, f) != push(m, b, g)) commutes = false;
    if (!seen.emplace(std::move(a), std::move(b)).second) injective = false;
  }
  check.expect(commutes && injective && total == expected, [&] {
    return "square f=" + show_fn(f) + " g=" + show_fn(g) + ": " + std::to_string(total) +
           " elements over the pullback, " + std::to_string(expected) + " compatible pairs" +
           (injective ? "" : ", comparison map not injective");
  });
}

void check_eta_square(const Monad& m, Degree degree, const std::vector<std::size_t>& f, std::size_t y_size,
                      Check& check) {
  std::set<Elem> etas;
  for (std::size_t x = 0; x < f.size(); ++x) etas.insert(m.eta(degree, x));
  std::set<Elem> eta_y;
  for (std::size_t y = 0; y < y_size; ++y) eta_y.insert(m.eta(degree, y));
  check.expect(etas.size() == f.size(), [&] { return "eta is not injective for |X|=" + std::to_string(f.size()); });
  for (const auto& e : m.elements(degree, iota_vec(f.size()), 1)) {
    if (!eta_y.contains(push(m, e, f))) continue;
    check.expect(etas.contains(e), [&] {
      return "eta square for f=" + show_fn(f) + ": " + show_elem(m, e) + " lies over eta(Y) but is not a unit";
    });
  }
}

void check_mu_square(const Monad& m, Degree degree, const std::vector<std::size_t>& f, std::size_t y_size,
                     std::size_t bound, Check& check) {
  const auto dx = m.elements_up_to(degree, iota_vec(f.size()), bound);
  const auto dy = m.elements_up_to(degree, iota_vec(y_size), bound);
  std::map<std::pair<DElem<Elem>, Elem>, std::size_t> lifts;
  for (const auto& big : nested_elements(m, degree, dx, bound)) {
    auto image = m.map(big, [&](const Elem& e) { return push(m, e, f); });
    Elem flat = m.mu(big);
    check.expect(m.mu(image) == push(m, flat, f),
                 [&] { return "mu is not natural at " + show_nested(m, big); });
    ++lifts[{std::move(image), std::move(flat)}];
  }
  std::map<Elem, std::vector<Elem>> fibre;
  for (const auto& e : dx) fibre[push(m, e, f)].push_back(e);
  for (const auto& big : nested_elements(m, degree, dy, bound)) {
    auto it = fibre.find(m.mu(big));
    if (it == fibre.end()) continue;
    for (const auto& e : it->second) {
      auto found = lifts.find({big, e});
      std::size_t count = found == lifts.end() ? 0 : found->second;
      check.expect(count == 1, [&] {
        return "mu square for f=" + show_fn(f) + ": " + std::to_string(count) + " lifts of (" + show_nested(m, big) +
               ", " + show_elem(m, e) + ")";
      });
    }
  }
}

std::vector<std::size_t> random_fn(std::mt19937_64& rng, std::size_t n, std::size_t target) {
  std::vector<std::size_t> out(n);
  for (auto& v : out) v = std::uniform_int_distribution<std::size_t>(0, target - 1)(rng);
  return out;
}

// All functions {0..n-1} -> {0..k-1}.
std::vector<std::vector<std::size_t>> all_functions(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0 && n > 0) return out;
  std::vector<std::size_t> current(n, 0);
  while (true) {
    out.push_back(current);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++current[i] < k) break;
      current[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace

Report check_cartesian(const Monad& m, Degree degree, const CartesianOptions& options) {
  Report report;
  const std::size_t bound = std::min(options.bound, m.max_arity());
  report.run("pullback_preservation", [&](Check& check) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.squares; ++s) {
      auto size = [&](std::size_t lo) {
        return std::uniform_int_distribution<std::size_t>(lo, options.max_set)(rng);
      };
      std::size_t z = size(1), a = size(0), b = size(0);
      auto f = random_fn(rng, a, z);
      auto g = random_fn(rng, b, z);
      check_square(m, degree, f, g, bound, check);
    }
  });
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> maps;
  for (std::size_t y = 1; y <= 2; ++y) {
    for (std::size_t x = 0; x <= options.max_naturality_set; ++x) {
      for (auto& f : all_functions(x, y)) maps.emplace_back(std::move(f), y);
    }
  }
  report.run("eta_naturality", [&](Check& check) {
    for (const auto& [f, y] : maps) check_eta_square(m, degree, f, y, check);
  });
  report.run("mu_naturality", [&](Check& check) {
    for (const auto& [f, y] : maps) check_mu_square(m, degree, f, y, bound, check);
  });
  return report;
}

namespace {

void check_lifts(const CatFunctor& F, bool target_side, Check& check) {
  const auto& C = F.src;
  const auto& D = F.tgt;
  const FinFn& src_end = target_side ? C.target : C.source;
  const FinFn& tgt_end = target_side ? D.target : D.source;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lifts;
  for (std::size_t f = 0; f < C.morphisms.size(); ++f) ++lifts[{F.on_morphisms(f), src_end(f)}];
  for (std::size_t g = 0; g < D.morphisms.size(); ++g) {
    for (std::size_t b = 0; b < C.objects.size(); ++b) {
      if (F.on_objects(b) != tgt_end(g)) continue;
      auto it = lifts.find({g, b});
      std::size_t count = it == lifts.end() ? 0 : it->second;
      check.expect(count == 1, [&] {
        return std::to_string(count) + " lifts of " + D.morphisms.label(g) + " at " + C.objects.label(b);
      });
    }
  }
}

}  // namespace

Report check_preserves_cover(const Monad& m, const CatFunctor& f, std::size_t bound) {
  const bool target_cover = is_target_cover(f);
  const bool source_cover = is_source_cover(f);
  if (!target_cover && !source_cover) {
    throw PreconditionError("check_preserves_cover: functor is neither a target nor a source cover");
  }
  DCategory src = apply_to_category(m, f.src, bound);
  DCategory tgt = apply_to_category(m, f.tgt, bound);
  CatFunctor df = apply_to_functor(m, f, src, tgt);
  Report report;
  if (target_cover) report.run("target_cover", [&](Check& check) { check_lifts(df, true, check); });
  if (source_cover) report.run("source_cover", [&](Check& check) { check_lifts(df, false, check); });
  return report;
}

Presheaf derived_presheaf(const Monad& m, const Presheaf& p, std::size_t bound) {
  Grothendieck g = grothendieck(p);
  DCategory total = apply_to_category(m, g.category, bound);
  DCategory base = apply_to_category(m, p.base, bound);
  return objects_presheaf(apply_to_functor(m, g.projection, total, base));
}

}  // namespace gmcat
