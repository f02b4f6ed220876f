#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minla/adversaries.hpp"
#include "minla/algorithms.hpp"
#include "minla/instance.hpp"
#include "minla/oracle.hpp"

namespace minla {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Stable identifier of a trace: FNV-1a of its canonical text.
std::string trace_id(const RevealTrace& trace);

/// Welford accumulator over total trial cost.
class RunningStats {
public:
    void add(double x) noexcept;

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

struct TrialStats {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample variance
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    double mean_move = 0.0;
    double mean_rearrange = 0.0;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    Cost cost_move = 0;
    Cost cost_rearrange = 0;
    Cost cost_total = 0;
};

struct ExperimentConfig {
    RevealTrace trace;
    std::string trace_id;  // computed from the trace when empty
    Algorithm algo = Algorithm::rand;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    std::size_t threads = 0;  // 0: hardware concurrency
    std::size_t cap = kDefaultItemCap;
};

struct ExperimentResult {
    ExperimentConfig config;
    OptResult opt;
    TrialStats stats;
    std::vector<TrialRecord> records;  // ordered by trial index
};

/// Runs `config.trials` independent trials, trial t seeded with
/// derive_seed(master_seed, t), and computes dp_opt once.
ExperimentResult run_experiment(ExperimentConfig config);

/// cost_total / opt_cost rounded half-up to six decimals, or "NA" when
/// opt_cost is zero.
std::string format_ratio(Cost total, Cost opt);

inline constexpr std::string_view kCsvHeader =
    "trace_id,algo,n,trial,cost_move,cost_rearrange,cost_total,opt_cost,ratio,seed";

/// CSV with `#`-prefixed metadata lines ahead of the header.
void write_csv(std::ostream& out, const ExperimentResult& result);
void write_json(std::ostream& out, const ExperimentResult& result);

/// One JSON object per line:
/// {event_index, move_cost, rearrange_cost, choice, prob_num, prob_den}.
void write_step_log(std::ostream& out, const std::vector<StepReport>& log);

// ---------------------------------------------------------------------------
// lemma verification

enum class LemmaKind { left_right, orientation, harmonic, identities };

std::string_view to_string(LemmaKind kind) noexcept;
std::optional<LemmaKind> parse_lemma(std::string_view text) noexcept;

inline constexpr std::uint64_t kMinLemmaTrials = 1000;
inline constexpr double kLemmaSigmas = 4.0;

struct LemmaParams {
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 0;
    std::optional<RevealTrace> trace;  // left-right / orientation; a built-in trace when empty
    std::optional<std::size_t> prefix;  // events replayed; by default until four components remain
};

struct LemmaCheck {
    std::string label;
    std::string expected;  // exact closed form, "num/den"
    double expected_value = 0.0;
    double observed = 0.0;
    double z_score = 0.0;
    bool pass = false;
};

struct LemmaReport {
    LemmaKind kind = LemmaKind::left_right;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string trace_id;
    std::vector<LemmaCheck> checks;
    bool pass = false;
};

/// left-right / orientation: Monte Carlo frequencies of RAND's component
/// placements after the trace prefix against the exact closed forms; a check
/// fails beyond kLemmaSigmas binomial standard errors. harmonic /
/// identities: random sweeps through the oracle checks. Throws InvalidInput
/// for fewer than kMinLemmaTrials trials.
LemmaReport verify_lemma(LemmaKind kind, const LemmaParams& params);

void write_json(std::ostream& out, const LemmaReport& report);

/// Built-in traces used when verify_lemma gets none.
RevealTrace default_left_right_trace();
RevealTrace default_orientation_trace();

// ---------------------------------------------------------------------------
// adaptive duel

struct DuelReport {
    std::size_t n = 0;
    Cost det_cost = 0;
    Cost opt_cost = 0;
    std::vector<MiddleLineAdversary::Side> sides;  // side of x after each step
    std::size_t alternations = 0;
    RevealTrace induced;

    double ratio() const noexcept {
        return opt_cost == 0 ? 0.0 : static_cast<double>(det_cost) / static_cast<double>(opt_cost);
    }
};

/// DET against the middle-line adversary on the identity line of n nodes.
DuelReport duel_det_middle_line(std::size_t n, std::size_t cap = kDefaultItemCap);

void write_json(std::ostream& out, const DuelReport& report);

}  // namespace minla
