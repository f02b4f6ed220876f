#include "minla/feasibility.hpp"

#include <algorithm>

namespace minla {

namespace {

Cost clique_stretch(const Permutation& p, std::span<const NodeId> members) {
    std::vector<Position> pos;
    pos.reserve(members.size());
    for (const NodeId v : members) pos.push_back(p.pos_of(v));
    std::sort(pos.begin(), pos.end());
    // sorted position i is the larger end of i pairs and the smaller of s-1-i
    std::int64_t total = 0;
    const auto s = static_cast<std::int64_t>(pos.size());
    for (std::int64_t i = 0; i < s; ++i) total += static_cast<std::int64_t>(pos[i]) * (2 * i - s + 1);
    return static_cast<Cost>(total);
}

Cost path_stretch(const Permutation& p, std::span<const NodeId> path) {
    Cost total = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const Position a = p.pos_of(path[i - 1]);
        const Position b = p.pos_of(path[i]);
        total += a < b ? b - a : a - b;
    }
    return total;
}

}  // namespace

Cost arrangement_cost(const Permutation& p, const ComponentPartition& parts) {
    if (p.size() != parts.node_count()) throw InstanceMismatch("arrangement_cost: node count mismatch");
    Cost total = 0;
    for (const auto& c : parts.components) {
        total += parts.model == Model::cliques ? clique_stretch(p, c) : path_stretch(p, c);
    }
    return total;
}

Cost minla_optimum(const ComponentPartition& parts) {
    Cost total = 0;
    for (const auto& c : parts.components) {
        const Cost s = c.size();
        total += parts.model == Model::cliques ? (s * s * s - s) / 6 : s - 1;
    }
    return total;
}

bool occupies_block(const Permutation& p, std::span<const NodeId> nodes, bool ordered) {
    if (nodes.size() < 2) return true;
    if (ordered) {
        const Position first = p.pos_of(nodes[0]);
        const bool ascending = p.pos_of(nodes[1]) > first;
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const auto expect = ascending ? static_cast<std::int64_t>(first) + static_cast<std::int64_t>(i)
                                          : static_cast<std::int64_t>(first) - static_cast<std::int64_t>(i);
            if (static_cast<std::int64_t>(p.pos_of(nodes[i])) != expect) return false;
        }
        return true;
    }
    Position lo = p.pos_of(nodes[0]);
    Position hi = lo;
    for (const NodeId v : nodes) {
        lo = std::min(lo, p.pos_of(v));
        hi = std::max(hi, p.pos_of(v));
    }
    return hi - lo + 1 == nodes.size();
}

bool is_minla(const Permutation& p, const ComponentPartition& parts) {
    if (p.size() != parts.node_count()) throw InstanceMismatch("is_minla: node count mismatch");
    const bool ordered = parts.model == Model::lines;
    return std::all_of(parts.components.begin(), parts.components.end(),
                       [&](const auto& c) { return occupies_block(p, c, ordered); });
}

bool is_minla(const Permutation& p, const ComponentTracker& tracker) {
    const std::size_t n = p.size();
    if (n != tracker.node_count()) throw InstanceMismatch("is_minla: node count mismatch");
    // Scan positions once: each component must form a single run of its full
    // size, and for lines the run must spell the path forwards or backwards.
    std::vector<bool> seen(n, false);
    Position start = 0;
    while (start < n) {
        const auto c = tracker.find(p.node_at(start));
        if (seen[c]) return false;
        seen[c] = true;
        const std::size_t size = tracker.size_of(c);
        if (start + size > n) return false;
        if (tracker.model() == Model::lines && size > 1) {
            const bool forward = p.node_at(start) == tracker.at(c, 0);
            for (std::size_t i = 0; i < size; ++i) {
                const NodeId expect = tracker.at(c, forward ? i : size - 1 - i);
                if (p.node_at(static_cast<Position>(start + i)) != expect) return false;
            }
        } else {
            for (std::size_t i = 1; i < size; ++i) {
                if (tracker.find(p.node_at(static_cast<Position>(start + i))) != c) return false;
            }
        }
        start += static_cast<Position>(size);
    }
    return true;
}

}  // namespace minla
