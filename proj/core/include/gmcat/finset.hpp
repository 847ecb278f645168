#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmcat/errors.hpp"

namespace gmcat {

// Finite set of distinct labels in lexicographic order; an element is its index.
class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<std::string> labels);

  // Labels "<prefix>0".."<prefix>(n-1)", zero padded so that index order is label order.
  static FinSet range(std::size_t n, std::string_view prefix = "");

  std::size_t size() const { return labels_->size(); }
  bool empty() const { return labels_->empty(); }
  const std::string& label(std::size_t i) const;
  const std::vector<std::string>& labels() const { return *labels_; }
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

// Total function between finite sets, stored as an index table.
class FinFn {
 public:
  FinFn() = default;
  FinFn(FinSet src, FinSet tgt, std::vector<std::size_t> table);

  static FinFn identity(const FinSet& set);

  const FinSet& src() const { return src_; }
  const FinSet& tgt() const { return tgt_; }
  const std::vector<std::size_t>& table() const { return table_; }
  std::size_t operator()(std::size_t x) const;

  // (*this) after inner.
  FinFn after(const FinFn& inner) const;

  friend bool operator==(const FinFn&, const FinFn&) = default;

 private:
  FinSet src_;
  FinSet tgt_;
  std::vector<std::size_t> table_;
};

// Permutation of {1..n}; images are 1-indexed. Products compose as functions.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::size_t> images);

  static Perm identity(std::size_t n);

  std::size_t arity() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i - 1]; }
  const std::vector<std::size_t>& images() const { return images_; }
  bool is_identity() const;
  Perm inverse() const;
  std::string str() const;

  // Moves the entry at position i to position sigma(i).
  template <class T>
  std::vector<T> act(std::span<const T> xs) const {
    if (xs.size() != arity()) throw StructuralError("permutation arity does not match list length");
    std::vector<T> out(xs.begin(), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) out[images_[i] - 1] = xs[i];
    return out;
  }

  friend Perm operator*(const Perm& outer, const Perm& inner);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<std::size_t> images_;
};

// All permutations of {1..n} in lexicographic order of their image lists.
std::vector<Perm> all_perms(std::size_t n);

// sigma<j_1,..,j_k>: moves the contiguous block at position m to block position sigma(m).
Perm block_perm(const Perm& sigma, std::span<const std::size_t> sizes);

// tau_1 (+) ... (+) tau_k acting blockwise.
Perm block_sum(std::span<const Perm> perms);

struct FixedPoint {
  Perm element;
  std::size_t point;
};

// Left action of a finite permutation group on a finite set.
class GroupAction {
 public:
  // table[g * |carrier| + x] = g . x. Validates the action laws and, when
  // require_free is set, freeness (throws FreenessError naming a fixed point).
  GroupAction(std::vector<Perm> group, FinSet carrier, std::vector<std::size_t> table,
              bool require_free);

  const std::vector<Perm>& group() const { return group_; }
  const FinSet& carrier() const { return carrier_; }
  std::size_t act(std::size_t g, std::size_t x) const { return table_[g * carrier_.size() + x]; }
  bool declared_free() const { return free_; }
  std::optional<FixedPoint> fixed_point() const;

 private:
  std::vector<Perm> group_;
  FinSet carrier_;
  std::vector<std::size_t> table_;
  bool free_;
};

bool verify_free(const GroupAction& action);

// Minimal element of the orbit of x.
std::size_t orbit_canonicalize(const GroupAction& action, std::size_t x);

// Orbit set with the quotient map; classes are labelled by their minimal member.
struct Quotient {
  FinSet set;
  FinFn quotient;
};
Quotient orbits(const GroupAction& action);

struct Pullback {
  FinSet set;
  FinFn proj1;
  FinFn proj2;
};
Pullback pullback(const FinFn& f, const FinFn& g);

Quotient coequalizer(const FinFn& f, const FinFn& g);

// Square  P --top--> B
//         |left      |right
//         C --bottom-> D
// commutes and the induced map P -> C x_D B is a bijection.
bool is_pullback_square(const FinFn& top, const FinFn& left, const FinFn& right,
                        const FinFn& bottom);

// Union-find over {0..n-1}; representatives are minimal indices.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace gmcat
