#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "gmcat/finset.hpp"

namespace gmcat::testing {

// Equivariant map out of a G-set whose action on the source is free: images of
// orbit representatives are chosen freely and extended by g.f(r).
FinFn extend_equivariant(const GroupAction& src, const GroupAction& tgt,
                         const std::vector<std::size_t>& rep_images);

// Disjoint union of `copies` regular orbits of the group.
GroupAction free_gset(const std::vector<Perm>& group, std::size_t copies, const std::string& tag);
// `points` points, each fixed by the whole group.
GroupAction trivial_gset(const std::vector<Perm>& group, std::size_t points, const std::string& tag);

// Pullback of equivariant maps with the diagonal action.
GroupAction pullback_action(const Pullback& p, const GroupAction& a, const GroupAction& b);

// Induced map on orbit sets.
FinFn induced_on_orbits(const FinFn& f, const Quotient& qs, const Quotient& qt);

struct OrbitSquareResult {
  bool quotient_is_pullback = false;
  std::string description;
};

// Random cospan A -> C <- B of G-sets with A, B free; C free unless
// `trivial_base` (then the group fixes every point of C). Checks that the orbit
// set of the pullback is the pullback of the orbit sets.
OrbitSquareResult orbit_square(std::mt19937_64& rng, std::size_t group_arity, bool trivial_base);

}  // namespace gmcat::testing
