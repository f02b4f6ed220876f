#pragma once

#include "minla/instance.hpp"
#include "minla/permutation.hpp"

namespace minla {

/// Sum of |pos(x) - pos(y)| over the edges of the graph described by
/// `parts`: every intra-component pair for cliques, consecutive path nodes
/// for lines.
Cost arrangement_cost(const Permutation& p, const ComponentPartition& parts);

/// Closed-form MinLA value: sum of (s^3 - s) / 6 per clique, s - 1 per path.
Cost minla_optimum(const ComponentPartition& parts);

/// Whether `p` is a MinLA of the graph: every component contiguous, and for
/// lines laid out in path order or its reverse. O(n).
bool is_minla(const Permutation& p, const ComponentPartition& parts);
bool is_minla(const Permutation& p, const ComponentTracker& tracker);

/// Contiguity test for one component's node sequence. With `ordered` set the
/// sequence must also appear in order or reversed.
bool occupies_block(const Permutation& p, std::span<const NodeId> nodes, bool ordered);

}  // namespace minla
