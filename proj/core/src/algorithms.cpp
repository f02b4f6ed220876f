#include "minla/algorithms.hpp"

#include <algorithm>
#include <stdexcept>

#include "minla/feasibility.hpp"

namespace minla {

std::string_view to_string(Algorithm algo) noexcept { return algo == Algorithm::det ? "det" : "rand"; }

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
    if (text == "det") return Algorithm::det;
    if (text == "rand") return Algorithm::rand;
    return std::nullopt;
}

std::string StepReport::choice() const {
    std::string out;
    switch (move) {
        case MoveChoice::none: out = "closest"; break;
        case MoveChoice::move_x: out = "move_x"; break;
        case MoveChoice::move_z: out = "move_z"; break;
    }
    switch (rearrange) {
        case RearrangeChoice::none: break;
        case RearrangeChoice::forward: out += "+forward"; break;
        case RearrangeChoice::reverse: out += "+reverse"; break;
    }
    return out;
}

AlgoState AlgoState::initial(const RevealTrace& trace, bool keep_log) {
    AlgoState state;
    state.current = trace.pi0;
    state.parts = ComponentTracker(trace.model, trace.n);
    state.keep_log = keep_log;
    return state;
}

BlockRange block_of(const AlgoState& state, ComponentTracker::ComponentId c) {
    const std::size_t size = state.parts.size_of(c);
    auto lo = static_cast<Position>(state.current.size());
    for (std::size_t i = 0; i < size; ++i) lo = std::min(lo, state.current.pos_of(state.parts.at(c, i)));
    return {lo, size};
}

namespace {

void record(AlgoState& state, StepReport report) {
    state.move_cost += report.move_cost;
    state.rearrange_cost += report.rearrange_cost;
    state.cumulative_cost += report.total();
    if (state.keep_log) state.step_log.push_back(std::move(report));
}

struct MovePhase {
    Cost cost = 0;
    MoveChoice choice = MoveChoice::none;
    CoinWeights coin;
};

/// Slides one of the two blocks next to the other, on its near side.
MovePhase move_together(AlgoState& state, ComponentTracker::ComponentId x, ComponentTracker::ComponentId z,
                        Rng& rng) {
    const BlockRange xb = block_of(state, x);
    const BlockRange zb = block_of(state, z);
    MovePhase phase;
    phase.coin = CoinWeights::for_sizes(xb.len, zb.len);
    const bool move_x = rng.below(phase.coin.denom) < phase.coin.move_x_num;
    phase.choice = move_x ? MoveChoice::move_x : MoveChoice::move_z;

    const bool x_left = xb.start < zb.start;
    Position dest = 0;
    if (move_x) {
        dest = x_left ? zb.start - static_cast<Position>(xb.len) : zb.end();
        phase.cost = state.current.move_block_inplace(xb, dest);
    } else {
        dest = x_left ? xb.end() : xb.start - static_cast<Position>(zb.len);
        phase.cost = state.current.move_block_inplace(zb, dest);
    }
    return phase;
}

Rational coin_probability(Cost num, Cost denom) {
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(denom));
}

}  // namespace

void det_step(AlgoState& state, const RevealTrace& trace, std::size_t event_index, std::size_t cap) {
    const auto& event = trace.events.at(event_index);
    state.parts.merge(event.u, event.v);
    auto target = closest_minla(state.parts.snapshot(), trace.pi0, cap);

    StepReport report;
    report.event_index = event_index;
    report.move_cost = kendall_tau(state.current, target.perm);
    state.current = std::move(target.perm);
    record(state, std::move(report));
}

void rand_clique_step(AlgoState& state, const RevealEvent& event, std::size_t event_index, Rng& rng) {
    const auto x = state.parts.find(event.u);
    const auto z = state.parts.find(event.v);
    if (x == z) throw InvalidInput("rand_clique_step: nodes already share a component");

    const MovePhase phase = move_together(state, x, z, rng);
    state.parts.merge(event.u, event.v);

    StepReport report;
    report.event_index = event_index;
    report.move_cost = phase.cost;
    report.move = phase.choice;
    report.move_coin = phase.coin;
    report.probability = coin_probability(
        phase.choice == MoveChoice::move_x ? phase.coin.move_x_num : phase.coin.move_z_num, phase.coin.denom);
    record(state, std::move(report));
}

void rand_line_step(AlgoState& state, const RevealEvent& event, std::size_t event_index, Rng& rng) {
    const auto x = state.parts.find(event.u);
    const auto z = state.parts.find(event.v);
    if (x == z) throw InvalidInput("rand_line_step: nodes already share a component");
    if (!state.parts.is_endpoint(event.u) || !state.parts.is_endpoint(event.v)) {
        throw InvalidInput("rand_line_step: revealed nodes must be path endpoints");
    }

    const MovePhase phase = move_together(state, x, z, rng);

    // merged sequence: X traversed ending at x, then Z starting at z
    auto xs = state.parts.nodes(x);
    if (xs.back() != event.u) std::reverse(xs.begin(), xs.end());
    auto zs = state.parts.nodes(z);
    if (zs.front() != event.v) std::reverse(zs.begin(), zs.end());
    std::vector<NodeId> forward = std::move(xs);
    forward.insert(forward.end(), zs.begin(), zs.end());

    const Position lo = std::min(block_of(state, x).start, block_of(state, z).start);
    std::vector<Position> current_pos;
    current_pos.reserve(forward.size());
    for (const NodeId v : forward) current_pos.push_back(state.current.pos_of(v));
    const Cost forward_cost = count_inversions(current_pos);
    const Cost span_pairs = choose2(forward.size());
    const Cost reverse_cost = span_pairs - forward_cost;

    const RearrangeWeights coin{reverse_cost, forward_cost, span_pairs};
    const bool keep_forward = rng.below(span_pairs) < coin.forward_num;
    if (!keep_forward) std::reverse(forward.begin(), forward.end());
    const Cost rearrange_cost = state.current.assign_block(lo, forward);

    state.parts.merge(event.u, event.v);

    StepReport report;
    report.event_index = event_index;
    report.move_cost = phase.cost;
    report.rearrange_cost = rearrange_cost;
    report.move = phase.choice;
    report.rearrange = keep_forward ? RearrangeChoice::forward : RearrangeChoice::reverse;
    report.move_coin = phase.coin;
    report.rearrange_coin = coin;
    report.probability =
        coin_probability(phase.choice == MoveChoice::move_x ? phase.coin.move_x_num : phase.coin.move_z_num,
                         phase.coin.denom) *
        coin_probability(keep_forward ? coin.forward_num : coin.reverse_num, coin.denom);
    record(state, std::move(report));
}

void step(Algorithm algo, AlgoState& state, const RevealTrace& trace, std::size_t event_index, Rng& rng,
          std::size_t cap) {
    if (algo == Algorithm::det) {
        det_step(state, trace, event_index, cap);
    } else if (trace.model == Model::cliques) {
        rand_clique_step(state, trace.events.at(event_index), event_index, rng);
    } else {
        rand_line_step(state, trace.events.at(event_index), event_index, rng);
    }
    if (!is_minla(state.current, state.parts)) {
        throw std::logic_error("step " + std::to_string(event_index) + " left an infeasible permutation");
    }
}

RunResult run(Algorithm algo, const RevealTrace& trace, std::uint64_t seed, const RunOptions& options) {
    if (const auto diag = validate_trace(trace)) throw InvalidInput("invalid trace: " + diag->reason);
    Rng rng(seed);
    RunResult result{AlgoState::initial(trace, options.keep_log), 0};
    for (std::size_t i = 0; i < trace.events.size(); ++i) step(algo, result.state, trace, i, rng, options.cap);
    result.total = result.state.cumulative_cost;
    return result;
}

}  // namespace minla
