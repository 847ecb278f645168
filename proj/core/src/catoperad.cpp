#include "gmcat/catoperad.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

namespace gmcat {

std::string_view to_string(Degree degree) { return degree == Degree::object ? "object" : "morphism"; }

CatOperad::CatOperad(std::string name, std::vector<OperadLevel> levels, std::size_t unit, ComposeFn compose)
    : name_(std::move(name)),
      levels_(std::make_shared<const std::vector<OperadLevel>>(std::move(levels))),
      unit_(unit),
      compose_(std::move(compose)) {
  if (levels_->size() < 2) throw StructuralError("operad needs levels 0 and 1");
  for (std::size_t n = 0; n < levels_->size(); ++n) {
    const auto& lvl = (*levels_)[n];
    if (lvl.group.empty() || lvl.group.front() != Perm::identity(n)) {
      throw StructuralError("level " + std::to_string(n) + " group must start with the identity");
    }
    if (lvl.object_action.size() != lvl.category.objects.size() * lvl.group.size() ||
        lvl.morphism_action.size() != lvl.category.morphisms.size() * lvl.group.size()) {
      throw StructuralError("level " + std::to_string(n) + " action tables have the wrong size");
    }
  }
  if (unit_ >= level(1).category.objects.size()) throw StructuralError("operad unit is not an object of level 1");
}

const OperadLevel& CatOperad::level(std::size_t n) const {
  if (n >= levels_->size()) {
    throw TruncationError("arity " + std::to_string(n) + " exceeds operad truncation " +
                          std::to_string(max_level()));
  }
  return (*levels_)[n];
}

std::size_t CatOperad::unit_cell(Degree degree) const {
  return degree == Degree::object ? unit_ : level(1).category.identity(unit_);
}

std::size_t CatOperad::compose(Degree degree, const Cell& outer, std::span<const Cell> inner) const {
  if (inner.size() != outer.arity) {
    throw StructuralError("operad composition: " + std::to_string(inner.size()) + " inputs for arity " +
                          std::to_string(outer.arity));
  }
  std::size_t total = 0;
  for (const auto& c : inner) {
    if (c.id >= level(c.arity).cells(degree)) throw StructuralError("operad composition: unknown cell");
    total += c.arity;
  }
  if (total > max_level()) {
    throw TruncationError("composite arity " + std::to_string(total) + " exceeds operad truncation " +
                          std::to_string(max_level()));
  }
  if (outer.id >= level(outer.arity).cells(degree)) throw StructuralError("operad composition: unknown cell");
  return compose_(degree, outer, inner);
}

CatOperad CatOperad::with_composition_override(Degree degree, Cell outer, std::vector<Cell> inner,
                                               std::size_t result) const {
  ComposeFn base = compose_;
  ComposeFn patched = [=](Degree d, const Cell& o, std::span<const Cell> in) {
    if (d == degree && o == outer && std::equal(in.begin(), in.end(), inner.begin(), inner.end())) {
      return result;
    }
    return base(d, o, in);
  };
  CatOperad copy = *this;
  copy.compose_ = std::move(patched);
  return copy;
}

CatOperad CatOperad::tabulated(std::string name, std::vector<OperadLevel> levels, std::size_t unit,
                               const std::vector<CompositionEntry>& entries) {
  using Key = std::tuple<Degree, Cell, std::vector<Cell>>;
  auto table = std::make_shared<std::map<Key, std::size_t>>();
  for (const auto& e : entries) {
    if (!table->emplace(Key{e.degree, e.outer, e.inner}, e.result).second) {
      throw StructuralError("composition tuple listed twice");
    }
  }
  ComposeFn fn = [table](Degree d, const Cell& outer, std::span<const Cell> inner) {
    auto it = table->find(Key{d, outer, std::vector<Cell>(inner.begin(), inner.end())});
    if (it == table->end()) throw StructuralError("composition table has no entry for this tuple");
    return it->second;
  };
  return CatOperad(std::move(name), std::move(levels), unit, std::move(fn));
}

Perm parse_word(std::string_view label) {
  if (label.size() < 2 || label.front() != '[' || label.back() != ']') {
    throw ParseError("not a word label: " + std::string(label));
  }
  std::vector<std::size_t> images;
  std::size_t value = 0;
  bool have = false;
  for (char ch : label.substr(1, label.size() - 2)) {
    if (ch == ',') {
      if (!have) throw ParseError("not a word label: " + std::string(label));
      images.push_back(value);
      value = 0;
      have = false;
    } else if (ch >= '0' && ch <= '9') {
      value = value * 10 + static_cast<std::size_t>(ch - '0');
      have = true;
    } else {
      throw ParseError("not a word label: " + std::string(label));
    }
  }
  if (have) images.push_back(value);
  return Perm(std::move(images));
}

std::pair<Perm, Perm> parse_word_morphism(std::string_view label) {
  auto arrow = label.find("<-");
  if (arrow == std::string_view::npos) throw ParseError("not a morphism label: " + std::string(label));
  return {parse_word(label.substr(0, arrow)), parse_word(label.substr(arrow + 2))};
}

namespace {

std::vector<std::size_t> factorials(std::size_t n) {
  std::vector<std::size_t> f(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  return f;
}

// Lexicographic rank of a permutation among all_perms(n).
std::size_t perm_rank(const std::vector<std::size_t>& images) {
  const std::size_t n = images.size();
  auto fact = factorials(n);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += images[j] < images[i];
    rank += smaller * fact[n - 1 - i];
  }
  return rank;
}

struct WordOperadData {
  bool chaotic = false;                          // one morphism per pair of words
  std::vector<std::vector<Perm>> words;          // [arity][object id]
  std::vector<std::size_t> level_factorial;
};

constexpr std::size_t max_word_letters = 8;
constexpr std::size_t max_word_level_chaotic = 5;
constexpr std::size_t max_word_level_discrete = 6;

OperadLevel word_level(std::size_t n, bool chaotic) {
  OperadLevel lvl;
  lvl.group = all_perms(n);
  const std::size_t g = lvl.group.size();
  std::vector<std::string> obj_labels;
  for (const auto& w : lvl.group) obj_labels.push_back(w.str());
  FinSet objects(obj_labels);
  std::vector<std::string> mor_labels;
  for (const auto& t : lvl.group) {
    if (chaotic) {
      for (const auto& s : lvl.group) mor_labels.push_back(t.str() + "<-" + s.str());
    } else {
      mor_labels.push_back(t.str() + "<-" + t.str());
    }
  }
  FinSet morphisms(mor_labels);
  // Lexicographic label order agrees with rank order for single-digit letters.
  auto mor_id = [&](std::size_t t, std::size_t s) { return chaotic ? t * g + s : t; };
  std::vector<std::size_t> src(morphisms.size()), tgt(morphisms.size()), ids(g);
  for (std::size_t t = 0; t < g; ++t) {
    ids[t] = mor_id(t, t);
    for (std::size_t s = 0; s < g; ++s) {
      if (!chaotic && s != t) continue;
      src[mor_id(t, s)] = s;
      tgt[mor_id(t, s)] = t;
    }
  }
  FinCategory& c = lvl.category;
  c.objects = objects;
  c.morphisms = morphisms;
  c.source = FinFn(morphisms, objects, std::move(src));
  c.target = FinFn(morphisms, objects, std::move(tgt));
  c.identity = FinFn(objects, morphisms, std::move(ids));
  for (std::size_t t = 0; t < g; ++t) {
    for (std::size_t m = 0; m < g; ++m) {
      if (!chaotic && m != t) continue;
      for (std::size_t s = 0; s < g; ++s) {
        if (!chaotic && s != m) continue;
        c.composition.emplace(FinCategory::key(mor_id(t, m), mor_id(m, s)), mor_id(t, s));
      }
    }
  }
  lvl.object_action.resize(g * g);
  for (std::size_t w = 0; w < g; ++w) {
    for (std::size_t h = 0; h < g; ++h) {
      lvl.object_action[w * g + h] = perm_rank((lvl.group[h].inverse() * lvl.group[w]).images());
    }
  }
  lvl.morphism_action.resize(morphisms.size() * g);
  for (std::size_t t = 0; t < g; ++t) {
    for (std::size_t s = 0; s < g; ++s) {
      if (!chaotic && s != t) continue;
      for (std::size_t h = 0; h < g; ++h) {
        lvl.morphism_action[mor_id(t, s) * g + h] =
            mor_id(lvl.object_action[t * g + h], lvl.object_action[s * g + h]);
      }
    }
  }
  return lvl;
}

CatOperad word_operad(std::string name, std::size_t max_level, bool chaotic) {
  std::size_t cap = chaotic ? max_word_level_chaotic : max_word_level_discrete;
  if (max_level > cap) {
    throw StructuralError(name + ": truncation " + std::to_string(max_level) + " exceeds supported maximum " +
                          std::to_string(cap));
  }
  std::size_t top = std::max<std::size_t>(max_level, 1);
  auto data = std::make_shared<WordOperadData>();
  data->chaotic = chaotic;
  data->level_factorial = factorials(top);
  std::vector<OperadLevel> levels;
  for (std::size_t n = 0; n <= top; ++n) {
    levels.push_back(word_level(n, chaotic));
    data->words.push_back(levels.back().group);
  }
  ComposeFn fn = [data](Degree degree, const Cell& outer, std::span<const Cell> inner) -> std::size_t {
    const auto& fact = data->level_factorial;
    auto ends = [&](const Cell& c) -> std::pair<std::size_t, std::size_t> {
      if (degree == Degree::object || !data->chaotic) return {c.id, c.id};
      return {c.id / fact[c.arity], c.id % fact[c.arity]};
    };
    // Substitutes the inner words into the outer word and ranks the result.
    auto glue = [&](bool take_target) {
      std::array<std::size_t, max_word_letters + 1> offset{};
      for (std::size_t i = 0; i < inner.size(); ++i) offset[i + 1] = offset[i] + inner[i].arity;
      std::array<std::size_t, max_word_letters> word{};
      std::size_t len = 0;
      auto o = ends(outer);
      for (std::size_t letter : data->words[outer.arity][take_target ? o.first : o.second].images()) {
        const Cell& c = inner[letter - 1];
        auto e = ends(c);
        for (std::size_t v : data->words[c.arity][take_target ? e.first : e.second].images()) {
          word[len++] = offset[letter - 1] + v;
        }
      }
      std::size_t rank = 0;
      for (std::size_t i = 0; i < len; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < len; ++j) smaller += word[j] < word[i];
        rank += smaller * fact[len - 1 - i];
      }
      return std::make_pair(rank, len);
    };
    auto [t, total] = glue(true);
    if (degree == Degree::object || !data->chaotic) return t;
    return t * fact[total] + glue(false).first;
  };
  return CatOperad(std::move(name), std::move(levels), 0, std::move(fn));
}

}  // namespace

CatOperad barratt_eccles(std::size_t max_level) { return word_operad("barratt-eccles", max_level, true); }

CatOperad associativity_operad(std::size_t max_level) {
  return word_operad("associativity", max_level, false);
}

CatOperad commutative_operad(std::size_t max_level) {
  constexpr std::size_t cap = 8;
  if (max_level > cap) throw StructuralError("commutative: truncation exceeds supported maximum 8");
  std::size_t top = std::max<std::size_t>(max_level, 1);
  std::vector<OperadLevel> levels;
  for (std::size_t n = 0; n <= top; ++n) {
    OperadLevel lvl;
    lvl.group = all_perms(n);
    CategoryBuilder b;
    b.add_object("*");
    b.add_morphism("*<-*", "*", "*");
    b.set_identity("*", "*<-*");
    b.add_composite("*<-*", "*<-*", "*<-*");
    lvl.category = b.build();
    lvl.object_action.assign(lvl.group.size(), 0);
    lvl.morphism_action.assign(lvl.group.size(), 0);
    levels.push_back(std::move(lvl));
  }
  return CatOperad("commutative", std::move(levels), 0,
                   [](Degree, const Cell&, std::span<const Cell>) { return std::size_t{0}; });
}

std::optional<FreenessWitness> sigma_freeness_witness(const CatOperad& op) {
  for (std::size_t n = 0; n <= op.max_level(); ++n) {
    const auto& lvl = op.level(n);
    for (Degree degree : {Degree::object, Degree::morphism}) {
      for (std::size_t g = 1; g < lvl.group.size(); ++g) {
        for (std::size_t c = 0; c < lvl.cells(degree); ++c) {
          if (lvl.act(degree, c, g) == c) return FreenessWitness{n, degree, lvl.group[g], lvl.cell_set(degree).label(c)};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_sigma_free(const CatOperad& op) { return !sigma_freeness_witness(op).has_value(); }

GroupAction level_action(const CatOperad& op, std::size_t arity, Degree degree, bool require_free) {
  const auto& lvl = op.level(arity);
  const std::size_t g = lvl.group.size();
  const std::size_t n = lvl.cells(degree);
  std::map<Perm, std::size_t> index;
  for (std::size_t h = 0; h < g; ++h) index.emplace(lvl.group[h], h);
  std::vector<std::size_t> table(g * n);
  for (std::size_t h = 0; h < g; ++h) {
    std::size_t inv = index.at(lvl.group[h].inverse());
    for (std::size_t c = 0; c < n; ++c) table[h * n + c] = lvl.act(degree, c, inv);
  }
  return GroupAction(lvl.group, lvl.cell_set(degree), std::move(table), require_free);
}

CategoryAction level_category_action(const CatOperad& op, std::size_t arity) {
  const auto& lvl = op.level(arity);
  std::map<Perm, std::size_t> index;
  for (std::size_t h = 0; h < lvl.group.size(); ++h) index.emplace(lvl.group[h], h);
  CategoryAction action;
  action.group = lvl.group;
  for (std::size_t h = 0; h < lvl.group.size(); ++h) {
    std::size_t inv = index.at(lvl.group[h].inverse());
    std::vector<std::size_t> objs(lvl.category.objects.size()), mors(lvl.category.morphisms.size());
    for (std::size_t c = 0; c < objs.size(); ++c) objs[c] = lvl.act(Degree::object, c, inv);
    for (std::size_t c = 0; c < mors.size(); ++c) mors[c] = lvl.act(Degree::morphism, c, inv);
    action.functors.push_back({lvl.category, lvl.category, FinFn(lvl.category.objects, lvl.category.objects, objs),
                               FinFn(lvl.category.morphisms, lvl.category.morphisms, mors)});
  }
  return action;
}

CatOperad simplicial_degree(const CatOperad& op, Degree degree) {
  std::vector<OperadLevel> levels;
  for (std::size_t n = 0; n <= op.max_level(); ++n) {
    const auto& src = op.level(n);
    OperadLevel lvl;
    lvl.group = src.group;
    lvl.category = FinCategory::discrete(src.cell_set(degree));
    const auto& table = degree == Degree::object ? src.object_action : src.morphism_action;
    lvl.object_action = table;
    lvl.morphism_action = table;
    levels.push_back(std::move(lvl));
  }
  CatOperad base = op;
  ComposeFn fn = [base, degree](Degree, const Cell& outer, std::span<const Cell> inner) {
    return base.compose(degree, outer, inner);
  };
  return CatOperad(op.name() + (degree == Degree::object ? "/objects" : "/morphisms"), std::move(levels),
                   op.unit_cell(degree), std::move(fn));
}

namespace {

std::string describe_tuple(const CatOperad& op, Degree degree, const Cell& outer, std::span<const Cell> inner) {
  std::string out = "gamma(" + op.label(degree, outer) + ";";
  for (std::size_t i = 0; i < inner.size(); ++i) out += (i ? ", " : " ") + op.label(degree, inner[i]);
  return out + ")";
}

// Cell ids per arity that a check ranges over.
using Pool = std::vector<std::vector<std::size_t>>;

// Calls fn on every list of `count` cells drawn from pool with total arity at most budget.
void for_each_list(const Pool& pool, std::size_t count, std::size_t budget,
                   const std::function<void(const std::vector<Cell>&)>& fn) {
  std::vector<Cell> current;
  current.reserve(count);
  std::function<void(std::size_t)> rec = [&](std::size_t remaining) {
    if (current.size() == count) {
      fn(current);
      return;
    }
    for (std::size_t a = 0; a <= remaining && a < pool.size(); ++a) {
      for (std::size_t c : pool[a]) {
        current.push_back({a, c});
        rec(remaining - a);
        current.pop_back();
      }
    }
  };
  rec(budget);
}

std::size_t total_arity(std::span<const Cell> cells) {
  std::size_t t = 0;
  for (const auto& c : cells) t += c.arity;
  return t;
}

std::uint64_t pack(const Perm& p) {
  std::uint64_t key = p.arity();
  for (std::size_t i = 1; i <= p.arity(); ++i) key = key * 16 + p(i);
  return key;
}

class PermIndex {
 public:
  explicit PermIndex(const CatOperad& op) {
    for (std::size_t n = 0; n <= op.max_level(); ++n) {
      const auto& group = op.level(n).group;
      for (std::size_t g = 0; g < group.size(); ++g) index_.emplace(pack(group[g]), g);
    }
  }
  std::size_t operator()(const Perm& p) const {
    auto it = index_.find(pack(p));
    if (it == index_.end()) throw StructuralError("permutation " + p.str() + " is not in its level's group");
    return it->second;
  }

 private:
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

Pool all_cells(const CatOperad& op, Degree degree) {
  Pool pool(op.max_level() + 1);
  for (std::size_t n = 0; n < pool.size(); ++n) {
    pool[n].resize(op.level(n).cells(degree));
    std::iota(pool[n].begin(), pool[n].end(), std::size_t{0});
  }
  return pool;
}

// Orbit minima; for a free action every cell is uniquely rep . g.
Pool representatives(const CatOperad& op, Degree degree) {
  Pool pool(op.max_level() + 1);
  for (std::size_t n = 0; n < pool.size(); ++n) {
    const auto& lvl = op.level(n);
    for (std::size_t c = 0; c < lvl.cells(degree); ++c) {
      bool minimal = true;
      for (std::size_t g = 0; g < lvl.group.size() && minimal; ++g) minimal = lvl.act(degree, c, g) >= c;
      if (minimal) pool[n].push_back(c);
    }
  }
  return pool;
}

}  // namespace

Report validate_operad(const CatOperad& op, const OperadCheckOptions& options) {
  Report report;
  const std::size_t N = op.max_level();
  const PermIndex perm_index(op);
  const Degree degrees[] = {Degree::object, Degree::morphism};
  Pool all[2], reduced[2];
  for (Degree d : degrees) {
    const auto i = static_cast<std::size_t>(d);
    all[i] = all_cells(op, d);
    reduced[i] = options.exhaustive ? all[i] : representatives(op, d);
  }
  auto pool = [&](Degree d, bool reduce) -> const Pool& {
    return reduce ? reduced[static_cast<std::size_t>(d)] : all[static_cast<std::size_t>(d)];
  };

  for (std::size_t n = 0; n <= N; ++n) {
    report.append(validate_category(op.level(n).category), "level" + std::to_string(n));
  }

  report.run("action.functor", [&](Check& check) {
    for (std::size_t n = 0; n <= N; ++n) {
      const auto& lvl = op.level(n);
      const auto& c = lvl.category;
      for (std::size_t g = 0; g < lvl.group.size(); ++g) {
        for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
          std::size_t mg = lvl.act(Degree::morphism, m, g);
          check.expect(c.source(mg) == lvl.act(Degree::object, c.source(m), g) &&
                           c.target(mg) == lvl.act(Degree::object, c.target(m), g),
                       [&] { return lvl.group[g].str() + " does not preserve ends of " + c.morphisms.label(m); });
        }
        for (std::size_t a = 0; a < c.objects.size(); ++a) {
          check.expect(lvl.act(Degree::morphism, c.identity(a), g) == c.identity(lvl.act(Degree::object, a, g)),
                       [&] { return lvl.group[g].str() + " does not preserve identity of " + c.objects.label(a); });
        }
        for (const auto& [k, h] : c.composition) {
          std::size_t x = k >> 32, y = k & 0xffffffffu;
          auto image = c.compose(lvl.act(Degree::morphism, x, g), lvl.act(Degree::morphism, y, g));
          check.expect(image && *image == lvl.act(Degree::morphism, h, g), [&] {
            return lvl.group[g].str() + " does not preserve " + c.morphisms.label(x) + " o " + c.morphisms.label(y);
          });
        }
      }
    }
  });

  report.run("action.law", [&](Check& check) {
    for (std::size_t n = 0; n <= N; ++n) {
      const auto& lvl = op.level(n);
      for (Degree degree : degrees) {
        for (std::size_t c = 0; c < lvl.cells(degree); ++c) {
          check.expect(lvl.act(degree, c, 0) == c,
                       [&] { return "identity moves " + lvl.cell_set(degree).label(c); });
          for (std::size_t g = 0; g < lvl.group.size(); ++g) {
            for (std::size_t h = 0; h < lvl.group.size(); ++h) {
              std::size_t gh = perm_index(lvl.group[g] * lvl.group[h]);
              check.expect(lvl.act(degree, lvl.act(degree, c, g), h) == lvl.act(degree, c, gh), [&] {
                return "(d.s).t != d.(st) for d=" + lvl.cell_set(degree).label(c) + ", s=" + lvl.group[g].str() +
                       ", t=" + lvl.group[h].str();
              });
            }
          }
        }
      }
    }
  });
  // The reductions below rely on the action laws.
  if (!report.ok()) return report;

  report.run("unit", [&](Check& check) {
    for (Degree degree : degrees) {
      const Cell unit{1, op.unit_cell(degree)};
      for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t c = 0; c < op.level(n).cells(degree); ++c) {
          const Cell d{n, c};
          std::vector<Cell> units(n, unit);
          check.expect(op.compose(degree, unit, std::span<const Cell>(&d, 1)) == c,
                       [&] { return "left unit fails for " + op.label(degree, d); });
          check.expect(op.compose(degree, d, units) == c,
                       [&] { return "right unit fails for " + op.label(degree, d); });
        }
      }
    }
  });

  // gamma(a.s; b_s(1), .., b_s(k)) = gamma(a; b) . s<j_s(1), .., j_s(k)>. On representatives a
  // with every s this covers every a, by the cocycle identity of block permutations.
  report.run("equivariance.outer", [&](Check& check) {
    for (Degree degree : degrees) {
      for (std::size_t k = 0; k <= N; ++k) {
        const auto& group = op.level(k).group;
        for (std::size_t a : pool(degree, true)[k]) {
          const Cell outer{k, a};
          for_each_list(pool(degree, false), k, N, [&](const std::vector<Cell>& inner) {
            const std::size_t j = total_arity(inner);
            const std::size_t base = op.compose(degree, outer, inner);
            std::vector<Cell> reordered(k);
            std::vector<std::size_t> sizes(k);
            for (std::size_t g = 0; g < group.size(); ++g) {
              const Perm& sigma = group[g];
              for (std::size_t m = 1; m <= k; ++m) {
                reordered[m - 1] = inner[sigma(m) - 1];
                sizes[m - 1] = reordered[m - 1].arity;
              }
              const Cell moved{k, op.act(degree, k, a, g)};
              const std::size_t lhs = op.compose(degree, moved, reordered);
              const std::size_t rhs = op.act(degree, j, base, perm_index(block_perm(sigma, sizes)));
              check.expect(lhs == rhs, [&] {
                return "outer equivariance fails: " + describe_tuple(op, degree, moved, reordered) + " differs from " +
                       describe_tuple(op, degree, outer, inner) + " moved by " + sigma.str();
              });
            }
          });
        }
      }
    }
  });

  // gamma(a; b_1.t_1, .., b_k.t_k) = gamma(a; b) . (t_1 + .. + t_k). With outer equivariance
  // known everywhere, representatives a and b_i with all t_i cover every tuple.
  report.run("equivariance.inner", [&](Check& check) {
    for (Degree degree : degrees) {
      for (std::size_t k = 0; k <= N; ++k) {
        for (std::size_t a : pool(degree, true)[k]) {
          const Cell outer{k, a};
          for_each_list(pool(degree, true), k, N, [&](const std::vector<Cell>& inner) {
            const std::size_t j = total_arity(inner);
            const std::size_t base = op.compose(degree, outer, inner);
            std::vector<std::size_t> taus(k, 0);
            std::vector<Cell> acted = inner;
            std::vector<Perm> perms(k);
            while (true) {
              for (std::size_t i = 0; i < k; ++i) {
                acted[i].id = op.act(degree, inner[i].arity, inner[i].id, taus[i]);
                perms[i] = op.level(inner[i].arity).group[taus[i]];
              }
              const std::size_t lhs = op.compose(degree, outer, acted);
              const std::size_t rhs = op.act(degree, j, base, perm_index(block_sum(perms)));
              check.expect(lhs == rhs, [&] {
                std::string w = describe_tuple(op, degree, outer, inner) + " with";
                for (const auto& p : perms) w += " " + p.str();
                return "inner equivariance fails: " + w;
              });
              std::size_t i = 0;
              for (; i < k; ++i) {
                if (++taus[i] < op.level(inner[i].arity).group.size()) break;
                taus[i] = 0;
              }
              if (i == k) break;
            }
          });
        }
      }
    }
  });

  // Given both equivariance laws, every tuple is a translate of one built from representatives.
  report.run("associativity", [&](Check& check) {
    for (Degree degree : degrees) {
      const Pool& reps = pool(degree, true);
      for (std::size_t k = 0; k <= N; ++k) {
        for (std::size_t a : reps[k]) {
          const Cell outer{k, a};
          for_each_list(reps, k, N, [&](const std::vector<Cell>& mid) {
            const std::size_t j = total_arity(mid);
            const Cell first{j, op.compose(degree, outer, mid)};
            for_each_list(reps, j, N, [&](const std::vector<Cell>& inner) {
              const std::size_t left = op.compose(degree, first, inner);
              std::vector<Cell> grouped;
              std::size_t pos = 0;
              for (const auto& b : mid) {
                std::span<const Cell> block(inner.data() + pos, b.arity);
                grouped.push_back({total_arity(block), op.compose(degree, b, block)});
                pos += b.arity;
              }
              const std::size_t right = op.compose(degree, outer, grouped);
              check.expect(left == right, [&] {
                std::string w = describe_tuple(op, degree, outer, mid) + " then";
                for (const auto& c : inner) w += " " + op.label(degree, c);
                return "associativity fails: " + w;
              });
            });
          });
        }
      }
    }
  });

  // gamma is a functor D_k x D_n1 x .. -> D_n. The first factor of each composite pair
  // ranges over representatives; the action is by functors, so translates follow.
  report.run("composition.functor", [&](Check& check) {
    const Pool& reps = pool(Degree::morphism, true);
    for (std::size_t k = 0; k <= N; ++k) {
      const auto& ck = op.level(k).category;
      for (std::size_t f : reps[k]) {
        const Cell outer{k, f};
        for_each_list(reps, k, N, [&](const std::vector<Cell>& inner) {
          const std::size_t j = total_arity(inner);
          const auto& cj = op.level(j).category;
          const std::size_t composite = op.compose(Degree::morphism, outer, inner);
          std::vector<Cell> srcs, tgts;
          for (const auto& c : inner) {
            const auto& ci = op.level(c.arity).category;
            srcs.push_back({c.arity, ci.source(c.id)});
            tgts.push_back({c.arity, ci.target(c.id)});
          }
          check.expect(cj.source(composite) == op.compose(Degree::object, {k, ck.source(f)}, srcs) &&
                           cj.target(composite) == op.compose(Degree::object, {k, ck.target(f)}, tgts),
                       [&] { return "composition does not preserve ends at " +
                                    describe_tuple(op, Degree::morphism, outer, inner); });
          std::vector<std::vector<std::size_t>> choices;
          for (const auto& c : inner) {
            const auto& ci = op.level(c.arity).category;
            choices.push_back(ci.morphisms_into(ci.source(c.id)));
          }
          const bool any = std::all_of(choices.begin(), choices.end(), [](const auto& v) { return !v.empty(); });
          for (std::size_t f2 : ck.morphisms_into(ck.source(f))) {
            std::vector<std::size_t> pick(k, 0);
            std::vector<Cell> second(k), composed(k);
            while (any) {
              for (std::size_t i = 0; i < k; ++i) {
                const auto& ci = op.level(inner[i].arity).category;
                second[i] = {inner[i].arity, choices[i][pick[i]]};
                composed[i] = {inner[i].arity, ci.compose_or_throw(inner[i].id, choices[i][pick[i]])};
              }
              const std::size_t lhs = op.compose(Degree::morphism, {k, ck.compose_or_throw(f, f2)}, composed);
              auto rhs = cj.compose(composite, op.compose(Degree::morphism, {k, f2}, second));
              check.expect(rhs && lhs == *rhs, [&] {
                return "composition does not preserve composites at " +
                       describe_tuple(op, Degree::morphism, outer, inner) + " after " +
                       describe_tuple(op, Degree::morphism, {k, f2}, second);
              });
              std::size_t i = 0;
              for (; i < k; ++i) {
                if (++pick[i] < choices[i].size()) break;
                pick[i] = 0;
              }
              if (i == k) break;
            }
          }
        });
      }
    }
    for (std::size_t k = 0; k <= N; ++k) {
      const auto& ck = op.level(k).category;
      for (std::size_t a = 0; a < ck.objects.size(); ++a) {
        for_each_list(pool(Degree::object, false), k, N, [&](const std::vector<Cell>& inner) {
          const std::size_t j = total_arity(inner);
          std::vector<Cell> ids;
          for (const auto& c : inner) ids.push_back({c.arity, op.level(c.arity).category.identity(c.id)});
          const std::size_t lhs = op.compose(Degree::morphism, {k, ck.identity(a)}, ids);
          check.expect(lhs == op.level(j).category.identity(op.compose(Degree::object, {k, a}, inner)), [&] {
            return "composition does not preserve identities at " + describe_tuple(op, Degree::object, {k, a}, inner);
          });
        });
      }
    }
  });

  return report;
}

}  // namespace gmcat
