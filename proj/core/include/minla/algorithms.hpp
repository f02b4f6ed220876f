#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minla/arrangement.hpp"
#include "minla/instance.hpp"
#include "minla/permutation.hpp"
#include "minla/random.hpp"
#include "minla/rational.hpp"

namespace minla {

enum class Algorithm { det, rand };

std::string_view to_string(Algorithm algo) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;

/// Moving-phase coin: X moves with probability |Z| / (|X| + |Z|), Z moves
/// with probability |X| / (|X| + |Z|).
struct CoinWeights {
    Cost move_x_num = 0;
    Cost move_z_num = 0;
    Cost denom = 0;

    static CoinWeights for_sizes(std::size_t x_size, std::size_t z_size) noexcept {
        return {z_size, x_size, x_size + z_size};
    }
    friend bool operator==(const CoinWeights&, const CoinWeights&) = default;
};

/// Rearranging-phase coin over the two orientations of the merged path.
/// Each target is chosen with probability equal to the cost of the other
/// one over C(|X| + |Z|, 2); the two costs always sum to that denominator.
struct RearrangeWeights {
    Cost forward_num = 0;  // = cost of the reversed target
    Cost reverse_num = 0;  // = cost of the forward target
    Cost denom = 0;

    friend bool operator==(const RearrangeWeights&, const RearrangeWeights&) = default;
};

enum class MoveChoice { none, move_x, move_z };

/// `forward` lays the span as (X ending at x) ++ (Z starting at z);
/// `reverse` lays the mirror image.
enum class RearrangeChoice { none, forward, reverse };

struct StepReport {
    std::size_t event_index = 0;
    Cost move_cost = 0;
    Cost rearrange_cost = 0;  // lines only
    MoveChoice move = MoveChoice::none;
    RearrangeChoice rearrange = RearrangeChoice::none;
    std::optional<CoinWeights> move_coin;
    std::optional<RearrangeWeights> rearrange_coin;
    Rational probability{1};  // of the realized outcome of this step

    Cost total() const noexcept { return move_cost + rearrange_cost; }
    std::string choice() const;
};

/// Per-trial state: the current permutation, the revealed components and
/// the running cost.
struct AlgoState {
    Permutation current;
    ComponentTracker parts;
    Cost cumulative_cost = 0;
    Cost move_cost = 0;
    Cost rearrange_cost = 0;
    std::vector<StepReport> step_log;
    bool keep_log = true;

    static AlgoState initial(const RevealTrace& trace, bool keep_log = true);
};

/// DET: jump to the MinLA of the graph after `event_index` closest to pi0
/// (lexicographically smallest among ties). Charges kendall_tau(old, new).
void det_step(AlgoState& state, const RevealTrace& trace, std::size_t event_index,
              std::size_t cap = kDefaultItemCap);

/// RAND on cliques: one biased coin decides which of the two merging blocks
/// slides toward the other; everything between shifts over.
void rand_clique_step(AlgoState& state, const RevealEvent& event, std::size_t event_index, Rng& rng);

/// RAND on lines: the clique move, then a second coin picking one of the two
/// orientations of the merged path inside its span.
void rand_line_step(AlgoState& state, const RevealEvent& event, std::size_t event_index, Rng& rng);

struct RunOptions {
    std::size_t cap = kDefaultItemCap;
    bool keep_log = true;
};

struct RunResult {
    AlgoState state;
    Cost total = 0;
};

/// Replays every event of `trace` with `algo`, checking feasibility after
/// each step. Deterministic in (algo, trace, seed).
RunResult run(Algorithm algo, const RevealTrace& trace, std::uint64_t seed, const RunOptions& options = {});

/// Applies one event with `algo`; RAND dispatches on the trace model.
void step(Algorithm algo, AlgoState& state, const RevealTrace& trace, std::size_t event_index, Rng& rng,
          std::size_t cap = kDefaultItemCap);

/// Positions currently occupied by component `c` (which must be contiguous).
BlockRange block_of(const AlgoState& state, ComponentTracker::ComponentId c);

}  // namespace minla
