#include "gmcat/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace gmcat {

std::optional<std::size_t> FinCategory::compose(std::size_t g, std::size_t f) const {
  auto it = composition.find(key(g, f));
  if (it == composition.end()) return std::nullopt;
  return it->second;
}

std::size_t FinCategory::compose_or_throw(std::size_t g, std::size_t f) const {
  auto result = compose(g, f);
  if (!result) {
    throw StructuralError("no composite for " + morphisms.label(g) + " o " + morphisms.label(f));
  }
  return *result;
}

std::vector<std::size_t> FinCategory::morphisms_into(std::size_t object) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms.size(); ++m) {
    if (target(m) == object) out.push_back(m);
  }
  return out;
}

FinCategory FinCategory::discrete(const FinSet& objects) {
  FinCategory c;
  c.objects = objects;
  c.morphisms = objects;
  c.source = FinFn::identity(objects);
  c.target = FinFn::identity(objects);
  c.identity = FinFn::identity(objects);
  for (std::size_t a = 0; a < objects.size(); ++a) c.composition.emplace(key(a, a), a);
  return c;
}

FinCategory FinCategory::terminal() { return discrete(FinSet({"*"})); }

void CategoryBuilder::add_object(std::string label) { objects_.push_back(std::move(label)); }

void CategoryBuilder::add_morphism(std::string label, std::string source, std::string target) {
  if (!morphisms_.emplace(label, std::make_pair(std::move(source), std::move(target))).second) {
    throw StructuralError("duplicate morphism label: " + label);
  }
}

void CategoryBuilder::set_identity(std::string object, std::string morphism) {
  identities_[std::move(object)] = std::move(morphism);
}

void CategoryBuilder::add_composite(std::string g, std::string f, std::string result) {
  composites_.emplace_back(std::move(g), std::move(f), std::move(result));
}

void CategoryBuilder::add_missing_identities() {
  for (const auto& a : objects_) {
    if (identities_.contains(a)) continue;
    std::string id = "id(" + a + ")";
    add_morphism(id, a, a);
    identities_[a] = id;
  }
  for (const auto& [a, id] : identities_) {
    for (const auto& [m, ends] : morphisms_) {
      if (ends.first == a) add_composite(m, id, m);
      if (ends.second == a && m != id) add_composite(id, m, m);
    }
  }
}

FinCategory CategoryBuilder::build() const {
  FinCategory c;
  c.objects = FinSet(objects_);
  std::vector<std::string> labels;
  for (const auto& [m, ends] : morphisms_) labels.push_back(m);
  c.morphisms = FinSet(labels);
  std::vector<std::size_t> src(labels.size()), tgt(labels.size());
  for (const auto& [m, ends] : morphisms_) {
    std::size_t i = c.morphisms.index_of(m);
    src[i] = c.objects.index_of(ends.first);
    tgt[i] = c.objects.index_of(ends.second);
  }
  c.source = FinFn(c.morphisms, c.objects, std::move(src));
  c.target = FinFn(c.morphisms, c.objects, std::move(tgt));
  std::vector<std::size_t> ids(c.objects.size());
  for (std::size_t a = 0; a < ids.size(); ++a) {
    auto it = identities_.find(c.objects.label(a));
    if (it == identities_.end()) throw StructuralError("object without identity: " + c.objects.label(a));
    ids[a] = c.morphisms.index_of(it->second);
  }
  c.identity = FinFn(c.objects, c.morphisms, std::move(ids));
  for (const auto& [g, f, h] : composites_) {
    c.composition[FinCategory::key(c.morphisms.index_of(g), c.morphisms.index_of(f))] =
        c.morphisms.index_of(h);
  }
  return c;
}

CatFunctor CatFunctor::identity(const FinCategory& category) {
  return {category, category, FinFn::identity(category.objects), FinFn::identity(category.morphisms)};
}

CatFunctor compose(const CatFunctor& outer, const CatFunctor& inner) {
  return {inner.src, outer.tgt, outer.on_objects.after(inner.on_objects),
          outer.on_morphisms.after(inner.on_morphisms)};
}

std::size_t Presheaf::act(std::size_t x, std::size_t c) const {
  auto it = action.find({x, c});
  if (it == action.end()) {
    throw StructuralError("presheaf action undefined on (" + carrier.label(x) + ", " +
                          base.morphisms.label(c) + ")");
  }
  return it->second;
}

Presheaf terminal_presheaf(const FinCategory& category) {
  Presheaf p{category, category.objects, FinFn::identity(category.objects), {}};
  for (std::size_t c = 0; c < category.morphisms.size(); ++c) {
    p.action[{category.target(c), c}] = category.source(c);
  }
  return p;
}

Report validate_category(const FinCategory& c) {
  Report report;
  const auto& mor = c.morphisms;
  const auto& obj = c.objects;
  report.run("identity.ends", [&](Check& check) {
    for (std::size_t a = 0; a < obj.size(); ++a) {
      std::size_t id = c.identity(a);
      check.expect(c.source(id) == a && c.target(id) == a,
                   [&] { return "identity of " + obj.label(a) + " has wrong ends"; });
    }
  });
  report.run("composition.domain", [&](Check& check) {
    for (std::size_t g = 0; g < mor.size(); ++g) {
      for (std::size_t f = 0; f < mor.size(); ++f) {
        bool composable = c.source(g) == c.target(f);
        bool present = c.composition.contains(FinCategory::key(g, f));
        check.expect(composable == present, [&] {
          return std::string(composable ? "missing composite " : "composite of non-composable pair ") +
                 mor.label(g) + " o " + mor.label(f);
        });
      }
    }
  });
  report.run("composition.ends", [&](Check& check) {
    for (const auto& [k, h] : c.composition) {
      std::size_t g = k >> 32, f = k & 0xffffffffu;
      check.expect(h < mor.size() && c.source(h) == c.source(f) && c.target(h) == c.target(g),
                   [&] { return "composite " + mor.label(g) + " o " + mor.label(f) + " has wrong ends"; });
    }
  });
  report.run("composition.left_unit", [&](Check& check) {
    for (std::size_t f = 0; f < mor.size(); ++f) {
      auto h = c.compose(c.identity(c.target(f)), f);
      check.expect(h == f, [&] { return "left unit fails at object " + obj.label(c.target(f)) +
                                        " for " + mor.label(f); });
    }
  });
  report.run("composition.right_unit", [&](Check& check) {
    for (std::size_t f = 0; f < mor.size(); ++f) {
      auto h = c.compose(f, c.identity(c.source(f)));
      check.expect(h == f, [&] { return "right unit fails at object " + obj.label(c.source(f)) +
                                        " for " + mor.label(f); });
    }
  });
  report.run("composition.associativity", [&](Check& check) {
    std::vector<std::vector<std::size_t>> into(obj.size());
    for (std::size_t m = 0; m < mor.size(); ++m) into[c.target(m)].push_back(m);
    for (std::size_t h = 0; h < mor.size(); ++h) {
      for (std::size_t g : into[c.source(h)]) {
        for (std::size_t f : into[c.source(g)]) {
          auto hg = c.compose(h, g);
          auto gf = c.compose(g, f);
          if (!hg || !gf) continue;  // reported by composition.domain
          auto left = c.compose(*hg, f);
          auto right = c.compose(h, *gf);
          check.expect(left && right && *left == *right, [&] {
            return "associativity fails for " + mor.label(h) + ", " + mor.label(g) + ", " + mor.label(f);
          });
        }
      }
    }
  });
  return report;
}

Report validate_functor(const CatFunctor& F) {
  Report report;
  const auto& C = F.src;
  const auto& D = F.tgt;
  report.run("functor.shape", [&](Check& check) {
    check.expect(F.on_objects.src() == C.objects && F.on_objects.tgt() == D.objects &&
                     F.on_morphisms.src() == C.morphisms && F.on_morphisms.tgt() == D.morphisms,
                 [] { return std::string("functor tables do not match the categories"); });
  });
  if (!report.ok()) return report;
  report.run("functor.ends", [&](Check& check) {
    for (std::size_t f = 0; f < C.morphisms.size(); ++f) {
      std::size_t Ff = F.on_morphisms(f);
      check.expect(D.source(Ff) == F.on_objects(C.source(f)) && D.target(Ff) == F.on_objects(C.target(f)),
                   [&] { return "ends not preserved at " + C.morphisms.label(f); });
    }
  });
  report.run("functor.identity", [&](Check& check) {
    for (std::size_t a = 0; a < C.objects.size(); ++a) {
      check.expect(F.on_morphisms(C.identity(a)) == D.identity(F.on_objects(a)),
                   [&] { return "identity not preserved at " + C.objects.label(a); });
    }
  });
  report.run("functor.composition", [&](Check& check) {
    for (const auto& [k, h] : C.composition) {
      std::size_t g = k >> 32, f = k & 0xffffffffu;
      auto image = D.compose(F.on_morphisms(g), F.on_morphisms(f));
      check.expect(image && *image == F.on_morphisms(h), [&] {
        return "composition not preserved at " + C.morphisms.label(g) + " o " + C.morphisms.label(f);
      });
    }
  });
  return report;
}

Report validate_presheaf(const Presheaf& p) {
  Report report;
  const auto& C = p.base;
  report.run("presheaf.shape", [&](Check& check) {
    check.expect(p.eps.src() == p.carrier && p.eps.tgt() == C.objects,
                 [] { return std::string("structure map does not match carrier and base"); });
  });
  if (!report.ok()) return report;
  report.run("presheaf.domain", [&](Check& check) {
    std::size_t expected = 0;
    for (std::size_t x = 0; x < p.carrier.size(); ++x) {
      for (std::size_t c = 0; c < C.morphisms.size(); ++c) {
        if (p.eps(x) != C.target(c)) continue;
        ++expected;
        check.expect(p.action.contains({x, c}), [&] {
          return "action undefined on (" + p.carrier.label(x) + ", " + C.morphisms.label(c) + ")";
        });
      }
    }
    check.expect(p.action.size() == expected, [] { return std::string("action defined outside its domain"); });
  });
  if (!report.ok()) return report;
  report.run("presheaf.structure_map", [&](Check& check) {
    for (const auto& [xc, y] : p.action) {
      check.expect(y < p.carrier.size() && p.eps(y) == C.source(xc.second), [&] {
        return "eps(x.c) != source(c) for (" + p.carrier.label(xc.first) + ", " +
               C.morphisms.label(xc.second) + ")";
      });
    }
  });
  report.run("presheaf.unit", [&](Check& check) {
    for (std::size_t x = 0; x < p.carrier.size(); ++x) {
      check.expect(p.act(x, C.identity(p.eps(x))) == x,
                   [&] { return "identity acts nontrivially on " + p.carrier.label(x); });
    }
  });
  report.run("presheaf.associativity", [&](Check& check) {
    for (const auto& [xc, y] : p.action) {
      auto [x, c] = xc;
      for (std::size_t d = 0; d < C.morphisms.size(); ++d) {
        if (C.target(d) != C.source(c)) continue;
        std::size_t cd = C.compose_or_throw(c, d);
        check.expect(p.act(y, d) == p.act(x, cd), [&] {
          return "(x.c).d != x.(c o d) for x=" + p.carrier.label(x) + ", c=" + C.morphisms.label(c) +
                 ", d=" + C.morphisms.label(d);
        });
      }
    }
  });
  return report;
}

namespace {

std::string join_string(const FinCategory& c, const std::vector<std::size_t>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "|";
    out += c.morphisms.label(s[i]);
  }
  return out;
}

std::vector<std::vector<std::size_t>> strings_of(const FinCategory& c, std::size_t n) {
  std::vector<std::vector<std::size_t>> level;
  for (std::size_t m = 0; m < c.morphisms.size(); ++m) level.push_back({m});
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : level) {
      for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
        if (c.source(s.back()) != c.target(m)) continue;
        auto t = s;
        t.push_back(m);
        next.push_back(std::move(t));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

NerveLevel nerve_level(const FinCategory& c, std::size_t n) {
  NerveLevel level;
  level.n = n;
  if (n == 0) {
    level.simplices = c.objects;
    return level;
  }
  auto strings = strings_of(c, n);
  std::vector<std::string> labels;
  for (const auto& s : strings) labels.push_back(join_string(c, s));
  level.simplices = FinSet(labels);
  level.strings.resize(strings.size());
  for (std::size_t i = 0; i < strings.size(); ++i) level.strings[level.simplices.index_of(labels[i])] = strings[i];
  if (n == 1) {
    level.face_target = c.target;
    level.face_source = c.source;
    return level;
  }
  NerveLevel lower = nerve_level(c, n - 1);
  std::vector<std::size_t> ft, fs;
  for (const auto& s : level.strings) {
    std::vector<std::size_t> drop_last(s.begin(), s.end() - 1);
    std::vector<std::size_t> drop_first(s.begin() + 1, s.end());
    ft.push_back(lower.simplices.index_of(join_string(c, drop_last)));
    fs.push_back(lower.simplices.index_of(join_string(c, drop_first)));
  }
  level.face_target = FinFn(level.simplices, lower.simplices, std::move(ft));
  level.face_source = FinFn(level.simplices, lower.simplices, std::move(fs));
  return level;
}

FinFn nerve_map(const CatFunctor& F, std::size_t n) {
  if (n == 0) return F.on_objects;
  NerveLevel src = nerve_level(F.src, n);
  NerveLevel tgt = nerve_level(F.tgt, n);
  std::vector<std::size_t> table;
  for (const auto& s : src.strings) {
    std::vector<std::size_t> image;
    for (std::size_t m : s) image.push_back(F.on_morphisms(m));
    table.push_back(tgt.simplices.index_of(join_string(F.tgt, image)));
  }
  return FinFn(src.simplices, tgt.simplices, std::move(table));
}

namespace {

bool unique_lifting(const CatFunctor& F, const FinFn& end_src, const FinFn& end_tgt) {
  const auto& C = F.src;
  const auto& D = F.tgt;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lifts;
  for (std::size_t f = 0; f < C.morphisms.size(); ++f) ++lifts[{F.on_morphisms(f), end_src(f)}];
  for (std::size_t g = 0; g < D.morphisms.size(); ++g) {
    for (std::size_t b = 0; b < C.objects.size(); ++b) {
      if (F.on_objects(b) != end_tgt(g)) continue;
      auto it = lifts.find({g, b});
      if (it == lifts.end() || it->second != 1) return false;
    }
  }
  return true;
}

// The unique f with F(f) = g and target(f) = b.
std::size_t lift_target(const CatFunctor& F, std::size_t g, std::size_t b) {
  std::optional<std::size_t> found;
  for (std::size_t f = 0; f < F.src.morphisms.size(); ++f) {
    if (F.on_morphisms(f) != g || F.src.target(f) != b) continue;
    if (found) throw PreconditionError("functor is not a target cover: two lifts");
    found = f;
  }
  if (!found) throw PreconditionError("functor is not a target cover: no lift");
  return *found;
}

}  // namespace

bool is_target_cover(const CatFunctor& F) { return unique_lifting(F, F.src.target, F.tgt.target); }

bool is_source_cover(const CatFunctor& F) { return unique_lifting(F, F.src.source, F.tgt.source); }

Grothendieck grothendieck(const Presheaf& p) {
  if (!validate_presheaf(p).ok()) throw StructuralError("grothendieck: invalid presheaf");
  const auto& C = p.base;
  CategoryBuilder builder;
  for (const auto& x : p.carrier.labels()) builder.add_object(x);
  auto label = [&](std::size_t x, std::size_t c) {
    return "(" + p.carrier.label(x) + "," + C.morphisms.label(c) + ")";
  };
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (const auto& [xc, y] : p.action) {
    arrows.push_back(xc);
    builder.add_morphism(label(xc.first, xc.second), p.carrier.label(y), p.carrier.label(xc.first));
  }
  for (std::size_t x = 0; x < p.carrier.size(); ++x) {
    builder.set_identity(p.carrier.label(x), label(x, C.identity(p.eps(x))));
  }
  for (const auto& [x, c] : arrows) {
    std::size_t y = p.act(x, c);
    for (std::size_t d = 0; d < C.morphisms.size(); ++d) {
      if (C.target(d) != C.source(c)) continue;
      builder.add_composite(label(x, c), label(y, d), label(x, C.compose_or_throw(c, d)));
    }
  }
  FinCategory total = builder.build();
  std::vector<std::size_t> on_mor(total.morphisms.size());
  for (const auto& [x, c] : arrows) on_mor[total.morphisms.index_of(label(x, c))] = c;
  CatFunctor projection{total, C, p.eps, FinFn(total.morphisms, C.morphisms, std::move(on_mor))};
  return {std::move(total), std::move(projection)};
}

Presheaf transport_presheaf(const CatFunctor& F, const Presheaf& over_target, const FinFn& eps_factor) {
  if (!is_target_cover(F)) throw PreconditionError("transport_presheaf: functor is not a target cover");
  if (!(eps_factor.src() == over_target.carrier) || !(eps_factor.tgt() == F.src.objects) ||
      !(F.on_objects.after(eps_factor) == over_target.eps)) {
    throw StructuralError("transport_presheaf: structure map does not factor through the cover");
  }
  const auto& C = F.src;
  Presheaf out{C, over_target.carrier, eps_factor, {}};
  for (std::size_t x = 0; x < out.carrier.size(); ++x) {
    for (std::size_t f = 0; f < C.morphisms.size(); ++f) {
      if (C.target(f) != eps_factor(x)) continue;
      std::size_t y = over_target.act(x, F.on_morphisms(f));
      if (eps_factor(y) != C.source(f)) {
        throw StructuralError("transport_presheaf: factorization is not equivariant at " +
                              out.carrier.label(x) + ", " + C.morphisms.label(f));
      }
      out.action[{x, f}] = y;
    }
  }
  return out;
}

Presheaf push_presheaf(const CatFunctor& F, const Presheaf& over_source) {
  if (!is_target_cover(F)) throw PreconditionError("push_presheaf: functor is not a target cover");
  const auto& D = F.tgt;
  Presheaf out{D, over_source.carrier, F.on_objects.after(over_source.eps), {}};
  for (std::size_t x = 0; x < out.carrier.size(); ++x) {
    for (std::size_t g = 0; g < D.morphisms.size(); ++g) {
      if (D.target(g) != out.eps(x)) continue;
      out.action[{x, g}] = over_source.act(x, lift_target(F, g, over_source.eps(x)));
    }
  }
  return out;
}

Presheaf objects_presheaf(const CatFunctor& F) {
  if (!is_target_cover(F)) throw PreconditionError("objects_presheaf: functor is not a target cover");
  const auto& C = F.src;
  const auto& D = F.tgt;
  Presheaf out{D, C.objects, F.on_objects, {}};
  for (std::size_t b = 0; b < C.objects.size(); ++b) {
    for (std::size_t g = 0; g < D.morphisms.size(); ++g) {
      if (D.target(g) != F.on_objects(b)) continue;
      out.action[{b, g}] = C.source(lift_target(F, g, b));
    }
  }
  return out;
}

Presheaf morphisms_presheaf(const CatFunctor& F) {
  if (!is_target_cover(F)) throw PreconditionError("morphisms_presheaf: functor is not a target cover");
  const auto& C = F.src;
  const auto& D = F.tgt;
  Presheaf out{D, C.morphisms, F.on_objects.after(C.source), {}};
  for (std::size_t f = 0; f < C.morphisms.size(); ++f) {
    for (std::size_t g = 0; g < D.morphisms.size(); ++g) {
      if (D.target(g) != out.eps(f)) continue;
      out.action[{f, g}] = C.compose_or_throw(f, lift_target(F, g, C.source(f)));
    }
  }
  return out;
}

Report validate_category_action(const CategoryAction& A, bool require_free) {
  Report report;
  report.run("action.functors", [&](Check& check) {
    check.expect(A.group.size() == A.functors.size() && !A.group.empty(),
                 [] { return std::string("one functor per group element required"); });
    for (std::size_t g = 0; g < A.functors.size(); ++g) {
      check.expect(validate_functor(A.functors[g]).ok(),
                   [&] { return "functor for " + A.group[g].str() + " is invalid"; });
    }
  });
  if (!report.ok()) return report;
  report.run("action.law", [&](Check& check) {
    std::map<Perm, std::size_t> index;
    for (std::size_t g = 0; g < A.group.size(); ++g) index.emplace(A.group[g], g);
    for (std::size_t g = 0; g < A.group.size(); ++g) {
      if (A.group[g].is_identity()) {
        check.expect(A.functors[g] == CatFunctor::identity(A.functors[g].src),
                     [] { return std::string("identity element acts nontrivially"); });
      }
      for (std::size_t h = 0; h < A.group.size(); ++h) {
        auto gh = index.find(A.group[g] * A.group[h]);
        check.expect(gh != index.end() && A.functors[gh->second] == compose(A.functors[g], A.functors[h]),
                     [&] { return "action law fails for " + A.group[g].str() + ", " + A.group[h].str(); });
      }
    }
  });
  if (require_free) {
    report.run("action.free", [&](Check& check) {
      for (std::size_t g = 0; g < A.group.size(); ++g) {
        if (A.group[g].is_identity()) continue;
        const auto& F = A.functors[g];
        for (std::size_t a = 0; a < F.src.objects.size(); ++a) {
          check.expect(F.on_objects(a) != a,
                       [&] { return A.group[g].str() + " fixes object " + F.src.objects.label(a); });
        }
        for (std::size_t m = 0; m < F.src.morphisms.size(); ++m) {
          check.expect(F.on_morphisms(m) != m,
                       [&] { return A.group[g].str() + " fixes morphism " + F.src.morphisms.label(m); });
        }
      }
    });
  }
  return report;
}

namespace {

std::vector<std::size_t> orbit_min(const std::vector<CatFunctor>& functors, bool on_objects, std::size_t n) {
  std::vector<std::size_t> rep(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t best = x;
    for (const auto& F : functors) best = std::min(best, on_objects ? F.on_objects(x) : F.on_morphisms(x));
    rep[x] = best;
  }
  return rep;
}

}  // namespace

FinCategory quotient_category(const FinCategory& c, const CategoryAction& A) {
  Report checks = validate_category_action(A, true);
  if (!checks.ok()) {
    auto v = checks.violations();
    throw FreenessError("quotient_category: " + (v.empty() ? std::string("invalid action") : v.front()));
  }
  auto obj_rep = orbit_min(A.functors, true, c.objects.size());
  auto mor_rep = orbit_min(A.functors, false, c.morphisms.size());
  CategoryBuilder builder;
  for (std::size_t a = 0; a < c.objects.size(); ++a) {
    if (obj_rep[a] == a) builder.add_object(c.objects.label(a));
  }
  for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
    if (mor_rep[m] != m) continue;
    builder.add_morphism(c.morphisms.label(m), c.objects.label(obj_rep[c.source(m)]),
                         c.objects.label(obj_rep[c.target(m)]));
  }
  for (std::size_t a = 0; a < c.objects.size(); ++a) {
    if (obj_rep[a] == a) builder.set_identity(c.objects.label(a), c.morphisms.label(mor_rep[c.identity(a)]));
  }
  for (std::size_t g = 0; g < c.morphisms.size(); ++g) {
    if (mor_rep[g] != g) continue;
    for (std::size_t f = 0; f < c.morphisms.size(); ++f) {
      if (mor_rep[f] != f || obj_rep[c.source(g)] != obj_rep[c.target(f)]) continue;
      // The translate of f whose target is source(g); unique by freeness.
      for (const auto& F : A.functors) {
        std::size_t moved = F.on_morphisms(f);
        if (c.target(moved) != c.source(g)) continue;
        builder.add_composite(c.morphisms.label(g), c.morphisms.label(f),
                              c.morphisms.label(mor_rep[c.compose_or_throw(g, moved)]));
        break;
      }
    }
  }
  return builder.build();
}

CatFunctor quotient_functor(const CatFunctor& F, const CategoryAction& on_src, const CategoryAction& on_tgt) {
  if (on_src.group != on_tgt.group) throw StructuralError("quotient_functor: actions use different groups");
  for (std::size_t g = 0; g < on_src.group.size(); ++g) {
    if (!(compose(F, on_src.functors[g]) == compose(on_tgt.functors[g], F))) {
      throw StructuralError("quotient_functor: functor is not equivariant for " + on_src.group[g].str());
    }
  }
  FinCategory qs = quotient_category(F.src, on_src);
  FinCategory qt = quotient_category(F.tgt, on_tgt);
  auto tgt_obj = orbit_min(on_tgt.functors, true, F.tgt.objects.size());
  auto tgt_mor = orbit_min(on_tgt.functors, false, F.tgt.morphisms.size());
  std::vector<std::size_t> objs(qs.objects.size()), mors(qs.morphisms.size());
  for (std::size_t a = 0; a < qs.objects.size(); ++a) {
    std::size_t orig = F.src.objects.index_of(qs.objects.label(a));
    objs[a] = qt.objects.index_of(F.tgt.objects.label(tgt_obj[F.on_objects(orig)]));
  }
  for (std::size_t m = 0; m < qs.morphisms.size(); ++m) {
    std::size_t orig = F.src.morphisms.index_of(qs.morphisms.label(m));
    mors[m] = qt.morphisms.index_of(F.tgt.morphisms.label(tgt_mor[F.on_morphisms(orig)]));
  }
  return {qs, qt, FinFn(qs.objects, qt.objects, std::move(objs)), FinFn(qs.morphisms, qt.morphisms, std::move(mors))};
}

}  // namespace gmcat
