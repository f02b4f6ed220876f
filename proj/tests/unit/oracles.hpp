#pragma once

// Brute-force reference implementations used only by the tests. Each one
// goes through the definitions directly, without the library's shortcuts.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <vector>

#include "minla/instance.hpp"
#include "minla/permutation.hpp"
#include "minla/random.hpp"

namespace oracle {

using minla::Cost;
using minla::NodeId;
using minla::Permutation;

inline Cost naive_kendall(const Permutation& p, const Permutation& q) {
    Cost d = 0;
    const auto n = static_cast<NodeId>(p.size());
    for (NodeId a = 0; a < n; ++a) {
        for (NodeId b = a + 1; b < n; ++b) {
            const bool in_p = p.pos_of(a) < p.pos_of(b);
            const bool in_q = q.pos_of(a) < q.pos_of(b);
            if (in_p != in_q) ++d;
        }
    }
    return d;
}

inline Permutation random_perm(std::size_t n, minla::Rng& rng) {
    std::vector<NodeId> v(n);
    std::iota(v.begin(), v.end(), NodeId{0});
    rng.shuffle(std::span<NodeId>(v));
    return Permutation(std::move(v));
}

inline std::vector<Permutation> all_perms(std::size_t n) {
    std::vector<NodeId> v(n);
    std::iota(v.begin(), v.end(), NodeId{0});
    std::vector<Permutation> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;  // lexicographic order
}

/// Edge list of the revealed graph.
inline std::vector<std::pair<NodeId, NodeId>> edges(const minla::ComponentPartition& parts) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (const auto& c : parts.components) {
        if (parts.model == minla::Model::lines) {
            for (std::size_t i = 0; i + 1 < c.size(); ++i) out.emplace_back(c[i], c[i + 1]);
        } else {
            for (std::size_t i = 0; i < c.size(); ++i) {
                for (std::size_t j = i + 1; j < c.size(); ++j) out.emplace_back(c[i], c[j]);
            }
        }
    }
    return out;
}

inline Cost naive_cost(const Permutation& p, const minla::ComponentPartition& parts) {
    Cost s = 0;
    for (const auto& [a, b] : edges(parts)) {
        const auto pa = p.pos_of(a), pb = p.pos_of(b);
        s += pa > pb ? pa - pb : pb - pa;
    }
    return s;
}

/// Every MinLA of the graph, in lexicographic order.
inline std::vector<Permutation> minlas(const minla::ComponentPartition& parts) {
    const auto perms = all_perms(parts.node_count());
    Cost best = std::numeric_limits<Cost>::max();
    for (const auto& p : perms) best = std::min(best, naive_cost(p, parts));
    std::vector<Permutation> out;
    for (const auto& p : perms) {
        if (naive_cost(p, parts) == best) out.push_back(p);
    }
    return out;
}

/// Closest MinLA to `ref`, lexicographically smallest among ties.
inline Permutation closest(const minla::ComponentPartition& parts, const Permutation& ref) {
    const auto cands = minlas(parts);
    const Permutation* best = nullptr;
    Cost best_d = std::numeric_limits<Cost>::max();
    for (const auto& p : cands) {
        const Cost d = naive_kendall(ref, p);
        if (d < best_d) {
            best_d = d;
            best = &p;
        }
    }
    return *best;
}

/// Cheapest total movement over all feasible schedules, by brute force over
/// the layered state graph.
inline Cost layered_opt(const minla::RevealTrace& trace) {
    std::vector<Permutation> layer{trace.pi0};
    std::vector<Cost> dist{0};
    for (std::size_t i = 1; i <= trace.k(); ++i) {
        const auto next = minlas(minla::replay_components(trace, i));
        std::vector<Cost> nd(next.size(), std::numeric_limits<Cost>::max());
        for (std::size_t a = 0; a < layer.size(); ++a) {
            for (std::size_t b = 0; b < next.size(); ++b) {
                nd[b] = std::min(nd[b], dist[a] + naive_kendall(layer[a], next[b]));
            }
        }
        layer = next;
        dist = std::move(nd);
    }
    return *std::min_element(dist.begin(), dist.end());
}

}  // namespace oracle
