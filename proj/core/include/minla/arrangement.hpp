#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minla/instance.hpp"
#include "minla/permutation.hpp"

namespace minla {

/// Largest number of blocks the exact ordering search accepts by default.
inline constexpr std::size_t kDefaultItemCap = 22;

/// `nodes` sorted by their position in `reference`.
std::vector<NodeId> induced_order(std::span<const NodeId> nodes, const Permutation& reference);

/// Pairs inside `block` that appear in the opposite order in `reference`.
Cost internal_inversions(std::span<const NodeId> block, const Permutation& reference);

/// Pairs (a, b), a in `first`, b in `second`, with b left of a in
/// `reference`: the inversions paid by laying `first` before `second`.
Cost cross_inversions(std::span<const NodeId> first, std::span<const NodeId> second,
                      const Permutation& reference);

/// The orientation of `path` with fewer inversions against `reference`;
/// on a tie, the orientation starting with the smaller endpoint.
std::vector<NodeId> closest_orientation(std::span<const NodeId> path, const Permutation& reference);

struct Arrangement {
    Permutation perm;
    Cost distance = 0;  // kendall_tau(reference, perm)
};

/// Concatenates fixed-order `blocks` in the order minimizing the distance to
/// `reference`. Exact subset dynamic program, O(2^m m^2) for m blocks.
/// Among optimal orders the lexicographically smallest permutation wins.
/// Throws CapacityExceeded when m > `cap`.
Arrangement order_blocks(std::vector<std::vector<NodeId>> blocks, const Permutation& reference,
                         std::size_t cap = kDefaultItemCap);

/// Closest MinLA of the graph `parts` to `reference`, lexicographically
/// smallest among ties.
Arrangement closest_minla(const ComponentPartition& parts, const Permutation& reference,
                          std::size_t cap = kDefaultItemCap);

}  // namespace minla
