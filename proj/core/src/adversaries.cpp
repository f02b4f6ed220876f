#include "minla/adversaries.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "minla/feasibility.hpp"
#include "minla/random.hpp"

namespace minla {

std::vector<RevealEvent> tree_requests(std::span<const NodeId> leaves) {
    const std::size_t n = leaves.size();
    if (n < 2 || !std::has_single_bit(n)) {
        throw InvalidInput("tree adversary needs a power-of-two node count >= 2, got " + std::to_string(n));
    }
    std::vector<RevealEvent> events;
    events.reserve(n - 1);
    // A subtree with `width` leaves covers leaves[start, start + width). Its
    // left child's rightmost leaf and right child's leftmost leaf are
    // adjacent in the leaf order.
    for (std::size_t width = 2; width <= n; width *= 2) {
        for (std::size_t start = 0; start < n; start += width) {
            const std::size_t half = width / 2;
            events.push_back({leaves[start + half - 1], leaves[start + half]});
        }
    }
    return events;
}

std::vector<NodeId> tree_leaf_order(const TreeAdversaryConfig& cfg) {
    if (cfg.q < 1 || cfg.q > 24) throw InvalidInput("tree adversary depth q must be in [1, 24]");
    std::vector<NodeId> leaves(cfg.n());
    std::iota(leaves.begin(), leaves.end(), NodeId{0});
    Rng rng(cfg.seed);
    rng.shuffle(std::span<NodeId>(leaves));
    return leaves;
}

RevealTrace tree_adversary(const TreeAdversaryConfig& cfg, const Permutation& pi0) {
    if (cfg.q < 1 || cfg.q > 24) throw InvalidInput("tree adversary depth q must be in [1, 24]");
    if (pi0.size() != cfg.n()) {
        throw InvalidInput("tree adversary: pi0 has " + std::to_string(pi0.size()) + " nodes, expected 2^q=" +
                           std::to_string(cfg.n()));
    }
    const auto leaves = tree_leaf_order(cfg);
    return {Model::lines, cfg.n(), pi0, tree_requests(leaves)};
}

RevealTrace tree_adversary(const TreeAdversaryConfig& cfg) {
    if (cfg.q < 1 || cfg.q > 24) throw InvalidInput("tree adversary depth q must be in [1, 24]");
    return tree_adversary(cfg, Permutation::identity(cfg.n()));
}

// ---------------------------------------------------------------------------

MiddleLineAdversary::MiddleLineAdversary(std::size_t n) : MiddleLineAdversary(n, Permutation::identity(n)) {}

MiddleLineAdversary::MiddleLineAdversary(std::size_t n, Permutation pi0) {
    if (n < 5 || n % 2 == 0) throw InvalidInput("middle-line adversary needs odd n >= 5, got " + std::to_string(n));
    if (pi0.size() != n) throw InvalidInput("middle-line adversary: pi0 size differs from n");
    mid_ = static_cast<Position>(n / 2);
    x_ = pi0.node_at(mid_);
    trace_ = {Model::lines, n, std::move(pi0), {}};
}

MiddleLineAdversary::Side MiddleLineAdversary::side_of_middle(const Permutation& current) const {
    if (current.size() != trace_.n) throw ProtocolError("opposing permutation has the wrong size");
    std::vector<NodeId> path;
    for (Position p = left_; p <= right_; ++p) {
        if (p != mid_) path.push_back(trace_.pi0.node_at(p));
    }
    if (!occupies_block(current, path, /*ordered=*/true)) {
        throw ProtocolError("opposing permutation does not keep the grown path contiguous");
    }
    return current.pos_of(x_) < current.pos_of(path.front()) ? Side::left : Side::right;
}

std::optional<RevealEvent> MiddleLineAdversary::next(const Permutation& current) {
    const auto node = [&](Position p) { return trace_.pi0.node_at(p); };
    if (!started_) {
        started_ = true;
        left_ = mid_ - 1;
        right_ = mid_ + 1;
        trace_.events.push_back({node(left_), node(right_)});
        return trace_.events.back();
    }
    const bool left_open = left_ > 0;
    const bool right_open = right_ + 1 < trace_.n;
    if (!left_open && !right_open) return std::nullopt;

    bool grow_left = side_of_middle(current) == Side::left;
    if (grow_left && !left_open) grow_left = false;
    if (!grow_left && !right_open) grow_left = true;

    RevealEvent e;
    if (grow_left) {
        e = {node(left_ - 1), node(left_)};
        --left_;
    } else {
        e = {node(right_ + 1), node(right_)};
        ++right_;
    }
    trace_.events.push_back(e);
    return e;
}

// ---------------------------------------------------------------------------

RevealTrace random_trace(Model model, std::size_t n, std::uint64_t seed, std::optional<std::size_t> events) {
    if (n == 0) throw InvalidInput("random_trace: n must be positive");
    const std::size_t k = events.value_or(n - 1);
    if (k > n - 1) throw InvalidInput("random_trace: at most n-1 events");

    Rng rng(seed);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    rng.shuffle(std::span<NodeId>(order));

    RevealTrace trace{model, n, Permutation(std::move(order)), {}};
    ComponentTracker tracker(model, n);
    std::vector<ComponentTracker::ComponentId> roots = tracker.roots();

    const auto pick_node = [&](ComponentTracker::ComponentId c) -> NodeId {
        if (model == Model::lines) return rng.below(2) == 0 ? tracker.front(c) : tracker.back(c);
        const auto members = tracker.nodes(c);
        return members[rng.below(members.size())];
    };

    for (std::size_t i = 0; i < k; ++i) {
        const auto a = static_cast<std::size_t>(rng.below(roots.size()));
        auto b = static_cast<std::size_t>(rng.below(roots.size() - 1));
        if (b >= a) ++b;
        const RevealEvent e{pick_node(roots[a]), pick_node(roots[b])};
        const auto merged = tracker.merge(e.u, e.v);
        trace.events.push_back(e);
        const auto gone = merged.merged == roots[a] ? b : a;
        roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(gone));
    }
    return trace;
}

}  // namespace minla
