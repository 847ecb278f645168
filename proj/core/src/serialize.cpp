#include "gmcat/serialize.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <sstream>

namespace gmcat {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& field(const Json& j, std::string_view key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, "missing field \"" + std::string(key) + "\"");
  return *it;
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

std::size_t natural(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    schema_error(where, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

std::vector<std::string> strings(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(text(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t lookup(const FinSet& set, const std::string& label, const std::string& where) {
  auto i = set.find(label);
  if (!i) schema_error(where, "unknown label \"" + label + "\"");
  return *i;
}

Degree degree_from(const Json& j, const std::string& where) {
  const auto s = text(j, where);
  if (s == "object") return Degree::object;
  if (s == "morphism") return Degree::morphism;
  schema_error(where, "degree must be \"object\" or \"morphism\"");
}

// Every tuple (outer; inner_1..inner_k) within the truncation, at one degree.
void for_each_tuple(const CatOperad& op, Degree degree, const std::function<void(const Cell&, const std::vector<Cell>&)>& fn) {
  const std::size_t top = op.max_level();
  for (std::size_t k = 0; k <= top; ++k) {
    for (std::size_t c = 0; c < op.level(k).cells(degree); ++c) {
      const Cell outer{k, c};
      std::vector<Cell> inner;
      std::function<void(std::size_t)> rec = [&](std::size_t used) {
        if (inner.size() == k) {
          fn(outer, inner);
          return;
        }
        for (std::size_t a = 0; a + used <= top; ++a) {
          for (std::size_t d = 0; d < op.level(a).cells(degree); ++d) {
            inner.push_back({a, d});
            rec(used + a);
            inner.pop_back();
          }
        }
      };
      rec(0);
    }
  }
}

Json cell_to_json(const CatOperad& op, Degree degree, const Cell& cell) {
  return Json::array({cell.arity, op.label(degree, cell)});
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  try {
    return Json::parse(content);
  } catch (const Json::parse_error& e) {
    // the message carries line and column
    throw ParseError(path.string() + ": " + e.what());
  }
}

CatOperad builtin_operad(std::string_view name, std::size_t truncation) {
  if (name == "barratt-eccles" || name == "es") return barratt_eccles(truncation);
  if (name == "associativity" || name == "ass") return associativity_operad(truncation);
  if (name == "commutative" || name == "comm") return commutative_operad(truncation);
  throw ParseError("unknown builtin operad \"" + std::string(name) + "\"");
}

Json category_to_json(const FinCategory& c) {
  Json morphisms = Json::array();
  for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
    morphisms.push_back({{"label", c.morphisms.label(m)},
                         {"source", c.objects.label(c.source(m))},
                         {"target", c.objects.label(c.target(m))}});
  }
  Json identities = Json::object();
  for (std::size_t o = 0; o < c.objects.size(); ++o) identities[c.objects.label(o)] = c.morphisms.label(c.identity(o));
  std::vector<std::array<std::string, 3>> rows;
  for (const auto& [key, gf] : c.composition) {
    rows.push_back({c.morphisms.label(key >> 32), c.morphisms.label(key & 0xffffffffu), c.morphisms.label(gf)});
  }
  std::sort(rows.begin(), rows.end());
  return {{"objects", c.objects.labels()}, {"morphisms", morphisms}, {"identities", identities}, {"composites", rows}};
}

FinCategory category_from_json(const Json& j, std::string_view where_view) {
  const std::string where(where_view);
  CategoryBuilder b;
  for (const auto& o : strings(field(j, "objects", where), where + ".objects")) b.add_object(o);
  const auto& morphisms = array(field(j, "morphisms", where), where + ".morphisms");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const std::string w = where + ".morphisms[" + std::to_string(i) + "]";
    b.add_morphism(text(field(morphisms[i], "label", w), w), text(field(morphisms[i], "source", w), w),
                   text(field(morphisms[i], "target", w), w));
  }
  if (j.contains("identities")) {
    for (const auto& [o, m] : field(j, "identities", where).items()) b.set_identity(o, text(m, where + ".identities"));
  }
  if (j.contains("composites")) {
    const auto& rows = array(j["composites"], where + ".composites");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto row = strings(rows[i], where + ".composites[" + std::to_string(i) + "]");
      if (row.size() != 3) schema_error(where + ".composites[" + std::to_string(i) + "]", "expected [g, f, g.f]");
      b.add_composite(row[0], row[1], row[2]);
    }
  }
  if (j.value("complete_identities", false)) b.add_missing_identities();
  try {
    return b.build();
  } catch (const StructuralError& e) {
    schema_error(where, e.what());
  }
}

Json operad_to_json(const CatOperad& op) {
  Json levels = Json::array();
  for (std::size_t n = 0; n <= op.max_level(); ++n) {
    const auto& lvl = op.level(n);
    Json level{{"arity", n}, {"category", category_to_json(lvl.category)}};
    for (Degree degree : {Degree::object, Degree::morphism}) {
      Json action = Json::object();
      for (std::size_t c = 0; c < lvl.cells(degree); ++c) {
        Json row = Json::array();
        for (std::size_t g = 0; g < lvl.group.size(); ++g) row.push_back(lvl.cell_set(degree).label(lvl.act(degree, c, g)));
        action[lvl.cell_set(degree).label(c)] = row;
      }
      level[degree == Degree::object ? "object_action" : "morphism_action"] = action;
    }
    levels.push_back(level);
  }
  Json composition = Json::array();
  for (Degree degree : {Degree::object, Degree::morphism}) {
    for_each_tuple(op, degree, [&](const Cell& outer, const std::vector<Cell>& inner) {
      Json in = Json::array();
      std::size_t total = 0;
      for (const auto& c : inner) {
        in.push_back(cell_to_json(op, degree, c));
        total += c.arity;
      }
      const Cell result{total, op.compose(degree, outer, inner)};
      composition.push_back({{"degree", std::string(to_string(degree))},
                             {"outer", op.label(degree, outer)},
                             {"inner", in},
                             {"result", op.label(degree, result)}});
    });
  }
  return {{"name", op.name()},
          {"truncate", op.max_level()},
          {"unit", op.label(Degree::object, {1, op.unit()})},
          {"levels", levels},
          {"composition", composition}};
}

CatOperad operad_from_json(const Json& j) {
  const std::string where = "operad";
  if (j.contains("builtin")) {
    const auto name = text(j["builtin"], where + ".builtin");
    const std::size_t truncation = j.contains("truncate") ? natural(j["truncate"], where + ".truncate") : 3;
    auto op = builtin_operad(name, truncation);
    // optional single-tuple overrides, for negative controls
    if (j.contains("overrides")) {
      const auto& rows = array(j["overrides"], where + ".overrides");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string w = where + ".overrides[" + std::to_string(i) + "]";
        const Degree degree = degree_from(field(rows[i], "degree", w), w + ".degree");
        const auto& inner_json = array(field(rows[i], "inner", w), w + ".inner");
        std::vector<Cell> inner;
        std::size_t total = 0;
        for (const auto& c : inner_json) {
          const std::size_t a = natural(c.at(0), w + ".inner");
          inner.push_back({a, lookup(op.level(a).cell_set(degree), text(c.at(1), w + ".inner"), w + ".inner")});
          total += a;
        }
        const std::size_t k = inner.size();
        const Cell outer{k, lookup(op.level(k).cell_set(degree), text(field(rows[i], "outer", w), w), w + ".outer")};
        const std::size_t result = lookup(op.level(total).cell_set(degree), text(field(rows[i], "result", w), w), w + ".result");
        op = op.with_composition_override(degree, outer, std::move(inner), result);
      }
    }
    return op;
  }

  const auto& levels_json = array(field(j, "levels", where), where + ".levels");
  std::vector<OperadLevel> levels;
  for (std::size_t n = 0; n < levels_json.size(); ++n) {
    const std::string w = where + ".levels[" + std::to_string(n) + "]";
    OperadLevel lvl;
    lvl.category = category_from_json(field(levels_json[n], "category", w), w + ".category");
    lvl.group = all_perms(n);
    for (Degree degree : {Degree::object, Degree::morphism}) {
      const std::string key = degree == Degree::object ? "object_action" : "morphism_action";
      const auto& action = field(levels_json[n], key, w);
      auto& table = degree == Degree::object ? lvl.object_action : lvl.morphism_action;
      const FinSet& cells = lvl.cell_set(degree);
      table.assign(cells.size() * lvl.group.size(), 0);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::string wc = w + "." + key + "." + cells.label(c);
        const auto row = strings(field(action, cells.label(c), w + "." + key), wc);
        if (row.size() != lvl.group.size()) schema_error(wc, "expected one entry per permutation");
        for (std::size_t g = 0; g < row.size(); ++g) table[c * lvl.group.size() + g] = lookup(cells, row[g], wc);
      }
    }
    levels.push_back(std::move(lvl));
  }
  if (levels.size() < 2) schema_error(where + ".levels", "levels 0 and 1 are required");

  std::vector<CompositionEntry> entries;
  const auto& rows = array(field(j, "composition", where), where + ".composition");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string w = where + ".composition[" + std::to_string(i) + "]";
    CompositionEntry e;
    e.degree = degree_from(field(rows[i], "degree", w), w + ".degree");
    std::size_t total = 0;
    for (const auto& c : array(field(rows[i], "inner", w), w + ".inner")) {
      if (!c.is_array() || c.size() != 2) schema_error(w + ".inner", "expected [arity, label]");
      const std::size_t a = natural(c[0], w + ".inner");
      if (a >= levels.size()) schema_error(w + ".inner", "arity beyond the listed levels");
      e.inner.push_back({a, lookup(levels[a].cell_set(e.degree), text(c[1], w + ".inner"), w + ".inner")});
      total += a;
    }
    const std::size_t k = e.inner.size();
    if (k >= levels.size() || total >= levels.size()) schema_error(w, "arity beyond the listed levels");
    e.outer = {k, lookup(levels[k].cell_set(e.degree), text(field(rows[i], "outer", w), w + ".outer"), w + ".outer")};
    e.result = lookup(levels[total].cell_set(e.degree), text(field(rows[i], "result", w), w + ".result"), w + ".result");
    entries.push_back(std::move(e));
  }
  const std::size_t unit = lookup(levels[1].category.objects, text(field(j, "unit", where), where + ".unit"), where + ".unit");
  const std::string name = j.contains("name") ? text(j["name"], where + ".name") : "tabulated";
  try {
    return CatOperad::tabulated(name, std::move(levels), unit, entries);
  } catch (const StructuralError& e) {
    schema_error(where, e.what());
  }
}

Json classical_to_json(const ClassicalMulticat& c) {
  Json operations = Json::array();
  for (const auto& op : c.operations) operations.push_back({{"label", op.label}, {"sources", op.sources}, {"target", op.target}});
  Json action = Json::array();
  for (const auto& [key, result] : c.action) {
    action.push_back({{"operation", key.first}, {"perm", key.second.images()}, {"result", result}});
  }
  Json composition = Json::array();
  for (const auto& [key, result] : c.composition) {
    composition.push_back({{"outer", key.first}, {"inner", key.second}, {"result", result}});
  }
  return {{"symmetric", c.symmetric}, {"objects", c.objects},   {"operations", operations},
          {"identities", c.identities}, {"action", action}, {"composition", composition}};
}

ClassicalMulticat classical_from_json(const Json& j, std::size_t max_arity) {
  const std::string where = "multicat";
  if (j.contains("builtin")) {
    const auto name = text(j["builtin"], where + ".builtin");
    const std::size_t arity = j.contains("max_arity") ? natural(j["max_arity"], where + ".max_arity") : max_arity;
    if (name == "terminal") return terminal_multicat(arity, j.value("symmetric", true));
    if (name == "associative") return associative_multicat(arity);
    if (name == "two-object") return two_object_multicat();
    schema_error(where + ".builtin", "unknown builtin multicategory \"" + name + "\"");
  }
  ClassicalMulticat c;
  c.symmetric = j.value("symmetric", false);
  c.objects = strings(field(j, "objects", where), where + ".objects");
  const auto& ops = array(field(j, "operations", where), where + ".operations");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string w = where + ".operations[" + std::to_string(i) + "]";
    c.operations.push_back({text(field(ops[i], "label", w), w + ".label"), strings(field(ops[i], "sources", w), w + ".sources"),
                            text(field(ops[i], "target", w), w + ".target")});
  }
  for (const auto& [o, m] : field(j, "identities", where).items()) c.identities[o] = text(m, where + ".identities." + o);
  if (j.contains("action")) {
    const auto& rows = array(j["action"], where + ".action");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string w = where + ".action[" + std::to_string(i) + "]";
      std::vector<std::size_t> images;
      for (const auto& v : array(field(rows[i], "perm", w), w + ".perm")) images.push_back(natural(v, w + ".perm"));
      try {
        c.action[{text(field(rows[i], "operation", w), w), Perm(std::move(images))}] = text(field(rows[i], "result", w), w);
      } catch (const StructuralError& e) {
        schema_error(w + ".perm", e.what());
      }
    }
  }
  const auto& rows = array(field(j, "composition", where), where + ".composition");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string w = where + ".composition[" + std::to_string(i) + "]";
    c.composition[{text(field(rows[i], "outer", w), w + ".outer"), strings(field(rows[i], "inner", w), w + ".inner")}] =
        text(field(rows[i], "result", w), w + ".result");
  }
  return c;
}

FinMulticat multicat_from_json(const Json& j, const Monad& monad) {
  const auto c = classical_from_json(j, monad.max_arity());
  return c.symmetric ? from_symmetric(c, monad) : from_nonsymmetric(c, monad);
}

Json multicat_to_json(const FinMulticat& m) {
  const auto& t = m.tables();
  const Monad& mo = m.monad();
  Json morphisms = Json::array();
  std::map<std::size_t, std::size_t> by_arity;
  for (const MorId f : m.morphisms()) {
    const auto& source = m.source(f);
    ++by_arity[source.arity];
    morphisms.push_back({{"label", m.describe(f)},
                         {"arity", source.arity},
                         {"source", mo.describe(source, [&](ObjId a) { return m.describe_object(a); })},
                         {"target", m.describe_object(m.target(f))}});
  }
  Json counts = Json::object();
  for (const auto& [n, count] : by_arity) counts[std::to_string(n)] = count;
  return {{"operad", mo.operad().name()},
          {"truncate", mo.max_arity()},
          {"objects", t.objects.labels()},
          {"morphisms", morphisms},
          {"morphisms_by_arity", counts},
          {"action_entries", t.action.size()},
          {"composition_entries", t.composition.size()}};
}

AnyAlgebra algebra_from_json(const Json& j, const Monad& monad) {
  const std::string where = "algebra";
  if (j.contains("builtin")) {
    const auto name = text(j["builtin"], where + ".builtin");
    const std::size_t modulus = j.contains("modulus") ? natural(j["modulus"], where + ".modulus") : 2;
    if (name == "sum") return sum_algebra(monad, modulus);
    if (name == "first-entry") return first_entry_algebra(monad, modulus);
    if (name == "free") {
      FinCategory c = j.contains("category") ? category_from_json(j["category"], where + ".category")
                                             : cyclic_group_category(modulus);
      return FreeAlgebra(monad, std::move(c));
    }
    schema_error(where + ".builtin", "unknown builtin algebra \"" + name + "\"");
  }
  FinCategory c = category_from_json(field(j, "category", where), where + ".category");
  std::map<DElem<std::size_t>, std::size_t> tables[2];
  for (Degree degree : {Degree::object, Degree::morphism}) {
    const std::string key = degree == Degree::object ? "xi0" : "xi1";
    const FinSet& carrier = degree == Degree::object ? c.objects : c.morphisms;
    const auto& rows = array(field(j, key, where), where + "." + key);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string w = where + "." + key + "[" + std::to_string(i) + "]";
      std::vector<std::size_t> xs;
      for (const auto& x : strings(field(rows[i], "xs", w), w + ".xs")) xs.push_back(lookup(carrier, x, w + ".xs"));
      const std::size_t n = xs.size();
      if (n > monad.max_arity()) schema_error(w, "list longer than the operad truncation");
      const std::size_t cell = lookup(monad.operad().level(n).cell_set(degree), text(field(rows[i], "cell", w), w + ".cell"), w + ".cell");
      const std::size_t value = lookup(carrier, text(field(rows[i], "value", w), w + ".value"), w + ".value");
      const auto e = monad.make(degree, n, cell, std::move(xs));
      auto [it, fresh] = tables[static_cast<std::size_t>(degree)].emplace(e, value);
      if (!fresh && it->second != value) schema_error(w, "conflicts with an earlier entry for the same element");
    }
  }
  const std::string name = j.contains("name") ? text(j["name"], where + ".name") : "tabulated";
  return tabulated_algebra(name, monad, std::move(c), std::move(tables[0]), std::move(tables[1]));
}

DElem<ObjId> parse_object_list(const FinMulticat& m, std::string_view input) {
  const Monad& mo = m.monad();
  std::string body(input);
  std::optional<std::string> cell_label;
  if (auto colon = body.find(':'); colon != std::string::npos) {
    cell_label = body.substr(0, colon);
    body = body.substr(colon + 1);
  }
  if (body == "()") body.clear();
  std::vector<ObjId> xs;
  std::stringstream in(body);
  for (std::string item; std::getline(in, item, ',');) {
    auto a = m.find_object(item);
    if (!a) throw ParseError("object list \"" + std::string(input) + "\": unknown object \"" + item + "\"");
    xs.push_back(*a);
  }
  const std::size_t n = xs.size();
  if (n > mo.max_arity()) {
    throw TruncationError("object list \"" + std::string(input) + "\" is longer than the truncation");
  }
  std::size_t cell = mo.orbit_representatives(Degree::object, n).front();
  if (cell_label) {
    auto c = mo.operad().level(n).category.objects.find(*cell_label);
    if (!c) throw ParseError("object list \"" + std::string(input) + "\": unknown operad cell \"" + *cell_label + "\"");
    cell = *c;
  }
  return mo.make(Degree::object, n, cell, std::move(xs));
}

}  // namespace gmcat
