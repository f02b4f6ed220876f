#include "minla/arrangement.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace minla {

std::vector<NodeId> induced_order(std::span<const NodeId> nodes, const Permutation& reference) {
    std::vector<NodeId> out(nodes.begin(), nodes.end());
    std::sort(out.begin(), out.end(),
              [&](NodeId a, NodeId b) { return reference.pos_of(a) < reference.pos_of(b); });
    return out;
}

Cost internal_inversions(std::span<const NodeId> block, const Permutation& reference) {
    std::vector<Position> pos;
    pos.reserve(block.size());
    for (const NodeId v : block) pos.push_back(reference.pos_of(v));
    return count_inversions(pos);
}

Cost cross_inversions(std::span<const NodeId> first, std::span<const NodeId> second,
                      const Permutation& reference) {
    std::vector<Position> a, b;
    a.reserve(first.size());
    b.reserve(second.size());
    for (const NodeId v : first) a.push_back(reference.pos_of(v));
    for (const NodeId v : second) b.push_back(reference.pos_of(v));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // for every a, count the b's to its left in the reference
    Cost total = 0;
    std::size_t j = 0;
    for (const Position pa : a) {
        while (j < b.size() && b[j] < pa) ++j;
        total += j;
    }
    return total;
}

std::vector<NodeId> closest_orientation(std::span<const NodeId> path, const Permutation& reference) {
    std::vector<NodeId> forward(path.begin(), path.end());
    if (forward.size() < 2) return forward;
    const Cost inv = internal_inversions(forward, reference);
    const Cost rev = choose2(forward.size()) - inv;
    if (inv < rev || (inv == rev && forward.front() < forward.back())) return forward;
    std::reverse(forward.begin(), forward.end());
    return forward;
}

Arrangement order_blocks(std::vector<std::vector<NodeId>> blocks, const Permutation& reference,
                         std::size_t cap) {
    const std::size_t m = blocks.size();
    if (m > cap) {
        throw CapacityExceeded("exact block ordering over " + std::to_string(m) +
                               " components exceeds the cap of " + std::to_string(cap));
    }
    if (m > 30) throw CapacityExceeded("exact block ordering supports at most 30 components");

    // Heads are distinct, so ordering candidates by head makes "lowest index"
    // the lexicographic tie-break.
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

    // before[j][k]: inversions paid when block j precedes block k.
    std::vector<std::size_t> block_of(reference.size());
    for (std::size_t j = 0; j < m; ++j) {
        for (const NodeId v : blocks[j]) block_of[v] = j;
    }
    std::vector<std::vector<Cost>> before(m, std::vector<Cost>(m, 0));
    {
        std::vector<Cost> seen(m, 0);
        for (std::size_t p = 0; p < reference.size(); ++p) {
            const std::size_t j = block_of[reference.node_at(static_cast<Position>(p))];
            for (std::size_t k = 0; k < m; ++k) {
                if (k != j) before[j][k] += seen[k];
            }
            ++seen[j];
        }
    }

    // rest[S]: cheapest cross cost of laying out the blocks in S, all of
    // which come after the blocks outside S.
    using Mask = std::uint32_t;
    const Mask full = m == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << m) - 1);
    std::vector<Cost> rest(static_cast<std::size_t>(full) + 1, 0);
    auto lead_cost = [&](std::size_t j, Mask others) {
        Cost c = 0;
        for (Mask bits = others; bits; bits &= bits - 1) c += before[j][static_cast<std::size_t>(std::countr_zero(bits))];
        return c;
    };
    for (Mask s = 1; s <= full && s != 0; ++s) {
        Cost best = std::numeric_limits<Cost>::max();
        for (Mask bits = s; bits; bits &= bits - 1) {
            const auto j = static_cast<std::size_t>(std::countr_zero(bits));
            const Mask others = s & ~(Mask{1} << j);
            best = std::min(best, lead_cost(j, others) + rest[others]);
        }
        rest[s] = best;
        if (s == full) break;
    }

    std::vector<NodeId> order;
    order.reserve(reference.size());
    Mask s = full;
    while (s) {
        for (Mask bits = s; bits; bits &= bits - 1) {
            const auto j = static_cast<std::size_t>(std::countr_zero(bits));
            const Mask others = s & ~(Mask{1} << j);
            if (lead_cost(j, others) + rest[others] == rest[s]) {
                order.insert(order.end(), blocks[j].begin(), blocks[j].end());
                s = others;
                break;
            }
        }
    }
    if (order.size() != reference.size()) {
        throw InstanceMismatch("order_blocks: blocks do not cover the reference permutation");
    }
    Arrangement out{Permutation(std::move(order)), 0};
    out.distance = kendall_tau(reference, out.perm);
    return out;
}

Arrangement closest_minla(const ComponentPartition& parts, const Permutation& reference, std::size_t cap) {
    std::vector<std::vector<NodeId>> blocks;
    blocks.reserve(parts.components.size());
    for (const auto& c : parts.components) {
        blocks.push_back(parts.model == Model::cliques ? induced_order(c, reference)
                                                       : closest_orientation(c, reference));
    }
    return order_blocks(std::move(blocks), reference, cap);
}

}  // namespace minla
