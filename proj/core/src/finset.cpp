#include "gmcat/finset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace gmcat {

FinSet::FinSet() : labels_(std::make_shared<const std::vector<std::string>>()) {}

FinSet::FinSet(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  auto dup = std::adjacent_find(labels.begin(), labels.end());
  if (dup != labels.end()) throw StructuralError("duplicate label in finite set: " + *dup);
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

FinSet FinSet::range(std::size_t n, std::string_view prefix) {
  std::size_t width = std::to_string(n == 0 ? 0 : n - 1).size();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    labels.push_back(std::string(prefix) + std::string(width - digits.size(), '0') + digits);
  }
  return FinSet(std::move(labels));
}

const std::string& FinSet::label(std::size_t i) const {
  if (i >= labels_->size()) throw StructuralError("element index out of range");
  return (*labels_)[i];
}

std::optional<std::size_t> FinSet::find(std::string_view label) const {
  auto it = std::lower_bound(labels_->begin(), labels_->end(), label);
  if (it == labels_->end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_->begin());
}

std::size_t FinSet::index_of(std::string_view label) const {
  auto found = find(label);
  if (!found) throw StructuralError("unknown label: " + std::string(label));
  return *found;
}

FinFn::FinFn(FinSet src, FinSet tgt, std::vector<std::size_t> table)
    : src_(std::move(src)), tgt_(std::move(tgt)), table_(std::move(table)) {
  if (table_.size() != src_.size()) throw StructuralError("function table is not total");
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= tgt_.size()) {
      throw StructuralError("image of " + src_.label(i) + " lies outside the target set");
    }
  }
}

FinFn FinFn::identity(const FinSet& set) {
  std::vector<std::size_t> table(set.size());
  std::iota(table.begin(), table.end(), std::size_t{0});
  return FinFn(set, set, std::move(table));
}

std::size_t FinFn::operator()(std::size_t x) const {
  if (x >= table_.size()) throw StructuralError("argument outside function domain");
  return table_[x];
}

FinFn FinFn::after(const FinFn& inner) const {
  if (!(inner.tgt() == src_)) throw StructuralError("composed functions do not match");
  std::vector<std::size_t> table(inner.table_.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = table_[inner.table_[i]];
  return FinFn(inner.src(), tgt_, std::move(table));
}

Perm::Perm(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v < 1 || v > images_.size() || seen[v - 1]) {
      throw StructuralError("not a permutation: " + str());
    }
    seen[v - 1] = true;
  }
}

Perm Perm::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{1});
  return Perm(std::move(images));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i + 1) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1] = i + 1;
  return Perm(std::move(inv));
}

std::string Perm::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) out << (i ? "," : "") << images_[i];
  out << ']';
  return out.str();
}

Perm operator*(const Perm& outer, const Perm& inner) {
  if (outer.arity() != inner.arity()) throw StructuralError("composing permutations of different arity");
  std::vector<std::size_t> images(inner.arity());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = outer.images_[inner.images_[i] - 1];
  return Perm(std::move(images));
}

std::vector<Perm> all_perms(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{1});
  std::vector<Perm> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Perm block_perm(const Perm& sigma, std::span<const std::size_t> sizes) {
  const std::size_t k = sigma.arity();
  if (sizes.size() != k) throw StructuralError("block sizes do not match permutation arity");
  // Block m lands at block position sigma(m); offsets follow the permuted layout.
  std::vector<std::size_t> size_at(k);
  for (std::size_t m = 1; m <= k; ++m) size_at[sigma(m) - 1] = sizes[m - 1];
  std::vector<std::size_t> offset_at(k + 1, 0);
  for (std::size_t p = 0; p < k; ++p) offset_at[p + 1] = offset_at[p] + size_at[p];
  std::vector<std::size_t> images;
  images.reserve(offset_at[k]);
  for (std::size_t m = 1; m <= k; ++m) {
    for (std::size_t r = 1; r <= sizes[m - 1]; ++r) images.push_back(offset_at[sigma(m) - 1] + r);
  }
  return Perm(std::move(images));
}

Perm block_sum(std::span<const Perm> perms) {
  std::vector<std::size_t> images;
  std::size_t offset = 0;
  for (const auto& p : perms) {
    for (std::size_t v : p.images()) images.push_back(offset + v);
    offset += p.arity();
  }
  return Perm(std::move(images));
}

GroupAction::GroupAction(std::vector<Perm> group, FinSet carrier, std::vector<std::size_t> table,
                         bool require_free)
    : group_(std::move(group)), carrier_(std::move(carrier)), table_(std::move(table)),
      free_(require_free) {
  const std::size_t n = carrier_.size();
  if (group_.empty()) throw StructuralError("group action needs a nonempty group");
  if (table_.size() != group_.size() * n) throw StructuralError("action table has the wrong size");
  for (std::size_t v : table_) {
    if (v >= n) throw StructuralError("action table leaves the carrier");
  }
  std::map<Perm, std::size_t> index;
  for (std::size_t g = 0; g < group_.size(); ++g) index.emplace(group_[g], g);
  if (index.size() != group_.size()) throw StructuralError("group lists an element twice");
  for (std::size_t a = 0; a < group_.size(); ++a) {
    if (!index.contains(group_[a].inverse())) throw StructuralError("group is not closed under inverse");
    for (std::size_t b = 0; b < group_.size(); ++b) {
      auto ab = index.find(group_[a] * group_[b]);
      if (ab == index.end()) throw StructuralError("group is not closed under composition");
      for (std::size_t x = 0; x < n; ++x) {
        if (act(ab->second, x) != act(a, act(b, x))) {
          throw StructuralError("action law fails for " + group_[a].str() + ", " + group_[b].str() +
                                " at " + carrier_.label(x));
        }
      }
    }
    if (group_[a].is_identity()) {
      for (std::size_t x = 0; x < n; ++x) {
        if (act(a, x) != x) throw StructuralError("identity moves " + carrier_.label(x));
      }
    }
  }
  if (require_free) {
    if (auto fp = fixed_point()) {
      throw FreenessError("action is not free: " + fp->element.str() + " fixes " +
                          carrier_.label(fp->point));
    }
  }
}

std::optional<FixedPoint> GroupAction::fixed_point() const {
  for (std::size_t g = 0; g < group_.size(); ++g) {
    if (group_[g].is_identity()) continue;
    for (std::size_t x = 0; x < carrier_.size(); ++x) {
      if (act(g, x) == x) return FixedPoint{group_[g], x};
    }
  }
  return std::nullopt;
}

bool verify_free(const GroupAction& action) { return !action.fixed_point().has_value(); }

std::size_t orbit_canonicalize(const GroupAction& action, std::size_t x) {
  if (!action.declared_free()) {
    if (auto fp = action.fixed_point()) {
      throw FreenessError("action is not free: " + fp->element.str() + " fixes " +
                          action.carrier().label(fp->point));
    }
  }
  std::size_t best = x;
  for (std::size_t g = 0; g < action.group().size(); ++g) best = std::min(best, action.act(g, x));
  return best;
}

Quotient orbits(const GroupAction& action) {
  const std::size_t n = action.carrier().size();
  std::vector<std::size_t> rep(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t best = x;
    for (std::size_t g = 0; g < action.group().size(); ++g) best = std::min(best, action.act(g, x));
    rep[x] = best;
  }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    if (rep[x] == x) labels.push_back(action.carrier().label(x));
  }
  FinSet set(labels);
  std::vector<std::size_t> table(n);
  for (std::size_t x = 0; x < n; ++x) table[x] = set.index_of(action.carrier().label(rep[x]));
  return {set, FinFn(action.carrier(), set, std::move(table))};
}

Pullback pullback(const FinFn& f, const FinFn& g) {
  if (!(f.tgt() == g.tgt())) throw StructuralError("pullback legs have different targets");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < f.src().size(); ++a) {
    for (std::size_t b = 0; b < g.src().size(); ++b) {
      if (f(a) != g(b)) continue;
      pairs.emplace_back(a, b);
      labels.push_back("(" + f.src().label(a) + "," + g.src().label(b) + ")");
    }
  }
  FinSet set(labels);
  std::vector<std::size_t> p1(pairs.size()), p2(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::size_t idx = set.index_of(labels[i]);
    p1[idx] = pairs[i].first;
    p2[idx] = pairs[i].second;
  }
  return {set, FinFn(set, f.src(), std::move(p1)), FinFn(set, g.src(), std::move(p2))};
}

Quotient coequalizer(const FinFn& f, const FinFn& g) {
  if (!(f.src() == g.src()) || !(f.tgt() == g.tgt())) {
    throw StructuralError("coequalizer legs have different shapes");
  }
  UnionFind classes(f.tgt().size());
  for (std::size_t x = 0; x < f.src().size(); ++x) classes.unite(f(x), g(x));
  std::vector<std::string> labels;
  for (std::size_t y = 0; y < f.tgt().size(); ++y) {
    if (classes.find(y) == y) labels.push_back(f.tgt().label(y));
  }
  FinSet set(labels);
  std::vector<std::size_t> table(f.tgt().size());
  for (std::size_t y = 0; y < table.size(); ++y) table[y] = set.index_of(f.tgt().label(classes.find(y)));
  return {set, FinFn(f.tgt(), set, std::move(table))};
}

bool is_pullback_square(const FinFn& top, const FinFn& left, const FinFn& right,
                        const FinFn& bottom) {
  if (!(top.src() == left.src()) || !(top.tgt() == right.src()) || !(left.tgt() == bottom.src()) ||
      !(right.tgt() == bottom.tgt())) {
    throw StructuralError("square shapes do not match");
  }
  const std::size_t n = top.src().size();
  for (std::size_t p = 0; p < n; ++p) {
    if (right(top(p)) != bottom(left(p))) return false;
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> hits;
  for (std::size_t p = 0; p < n; ++p) {
    if (++hits[{left(p), top(p)}] > 1) return false;
  }
  std::size_t expected = 0;
  for (std::size_t c = 0; c < left.tgt().size(); ++c) {
    for (std::size_t b = 0; b < top.tgt().size(); ++b) {
      if (bottom(c) == right(b)) ++expected;
    }
  }
  return expected == n;
}

UnionFind::UnionFind(std::size_t n) : parent_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a < b) {
    parent_[b] = a;
  } else {
    parent_[a] = b;
  }
}

}  // namespace gmcat
