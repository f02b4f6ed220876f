#include "minla/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "minla/feasibility.hpp"

namespace minla {

namespace {

void require_valid(const RevealTrace& trace) {
    if (const auto diag = validate_trace(trace)) throw InvalidInput("invalid trace: " + diag->reason);
}

/// Merge-forest DP for cliques: each root carries its best laminar block.
std::vector<std::vector<NodeId>> laminar_blocks(const RevealTrace& trace) {
    const auto& pi0 = trace.pi0;
    std::vector<std::vector<NodeId>> block(trace.n);
    for (std::size_t v = 0; v < trace.n; ++v) block[v] = {static_cast<NodeId>(v)};

    ComponentTracker tracker(Model::cliques, trace.n);
    for (const auto& e : trace.events) {
        const auto m = tracker.merge(e.u, e.v);
        auto& xb = block[m.x];
        auto& zb = block[m.z];
        const Cost x_first = cross_inversions(xb, zb, pi0);
        const Cost z_first = static_cast<Cost>(xb.size()) * zb.size() - x_first;
        const bool keep_x_first = x_first < z_first || (x_first == z_first && xb.front() < zb.front());
        std::vector<NodeId> merged;
        merged.reserve(xb.size() + zb.size());
        const auto& lead = keep_x_first ? xb : zb;
        const auto& tail = keep_x_first ? zb : xb;
        merged.insert(merged.end(), lead.begin(), lead.end());
        merged.insert(merged.end(), tail.begin(), tail.end());
        xb.clear();
        zb.clear();
        block[m.merged] = std::move(merged);
    }
    std::vector<std::vector<NodeId>> out;
    for (const auto root : tracker.roots()) out.push_back(std::move(block[root]));
    return out;
}

}  // namespace

OptResult dp_opt(const RevealTrace& trace, std::size_t cap) {
    require_valid(trace);
    Arrangement best;
    if (trace.model == Model::lines) {
        best = closest_minla(replay_components(trace, trace.k()), trace.pi0, cap);
    } else {
        auto blocks = laminar_blocks(trace);
        if (blocks.size() > cap) {
            throw CapacityExceeded("dp_opt: " + std::to_string(blocks.size()) +
                                   " final components exceed the cap of " + std::to_string(cap));
        }
        best = order_blocks(std::move(blocks), trace.pi0, cap);
    }
    return {best.distance, std::move(best.perm)};
}

OptResult exhaustive_opt(const RevealTrace& trace) {
    require_valid(trace);
    if (trace.n > kExhaustiveMaxNodes) {
        throw InvalidInput("exhaustive_opt supports n <= " + std::to_string(kExhaustiveMaxNodes) +
                           ", got n=" + std::to_string(trace.n));
    }
    const std::size_t n = trace.n;

    // All n! permutations in lexicographic order.
    std::vector<std::vector<NodeId>> all;
    {
        std::vector<NodeId> order(n);
        std::iota(order.begin(), order.end(), NodeId{0});
        do {
            all.push_back(order);
        } while (std::next_permutation(order.begin(), order.end()));
    }
    std::vector<Permutation> perms;
    perms.reserve(all.size());
    for (auto& o : all) perms.emplace_back(std::move(o));

    auto distance = [n](const Permutation& p, const Permutation& q) {
        Cost d = 0;
        for (NodeId a = 0; a < n; ++a) {
            for (NodeId b = a + 1; b < n; ++b) {
                if ((p.pos_of(a) < p.pos_of(b)) != (q.pos_of(a) < q.pos_of(b))) ++d;
            }
        }
        return d;
    };

    std::vector<std::size_t> layer;
    std::vector<Cost> dist;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        if (perms[i] == trace.pi0) layer.push_back(i);
    }
    dist.assign(1, 0);

    ComponentTracker tracker(trace.model, n);
    for (const auto& e : trace.events) {
        tracker.merge(e.u, e.v);
        const auto parts = tracker.snapshot();
        std::vector<std::size_t> next;
        std::vector<Cost> next_dist;
        for (std::size_t q = 0; q < perms.size(); ++q) {
            if (!is_minla(perms[q], parts)) continue;
            Cost best = std::numeric_limits<Cost>::max();
            for (std::size_t j = 0; j < layer.size(); ++j) {
                best = std::min(best, dist[j] + distance(perms[layer[j]], perms[q]));
            }
            next.push_back(q);
            next_dist.push_back(best);
        }
        layer = std::move(next);
        dist = std::move(next_dist);
    }

    const auto it = std::min_element(dist.begin(), dist.end());
    return {*it, perms[layer[static_cast<std::size_t>(it - dist.begin())]]};
}

Rational left_right_probability(std::span<const NodeId> x, std::span<const NodeId> y, const Permutation& pi0) {
    if (x.empty() || y.empty()) throw InvalidInput("left_right_probability: empty component");
    for (const NodeId a : x) {
        if (std::find(y.begin(), y.end(), a) != y.end()) {
            throw InvalidInput("left_right_probability: components overlap on node " + std::to_string(a));
        }
    }
    // pairs (a in x, b in y) with a left of b in pi0
    const Cost left_pairs = cross_inversions(y, x, pi0);
    return {static_cast<std::int64_t>(left_pairs), static_cast<std::int64_t>(x.size() * y.size())};
}

Rational orientation_probability(std::span<const NodeId> path, const Permutation& pi0) {
    if (path.size() < 2) throw InvalidInput("orientation_probability: component has a single node");
    const Cost pairs = choose2(path.size());
    const Cost agreeing = pairs - internal_inversions(path, pi0);
    return {static_cast<std::int64_t>(agreeing), static_cast<std::int64_t>(pairs)};
}

double bound_for_trace(const RevealTrace& trace, const OptResult& opt) {
    const double factor = trace.model == Model::cliques ? 4.0 : 8.0;
    return factor * harmonic_number(trace.n).value * static_cast<double>(opt.cost);
}

}  // namespace minla
