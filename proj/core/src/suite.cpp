#include "minla/suite.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "minla/adversaries.hpp"
#include "minla/algorithms.hpp"
#include "minla/feasibility.hpp"
#include "minla/harness.hpp"
#include "minla/oracle.hpp"
#include "minla/random.hpp"

namespace minla {

namespace {

constexpr std::array<Model, 2> kModels{Model::cliques, Model::lines};

std::uint64_t criterion_seed(int id, std::uint64_t salt) {
    return derive_seed(kSuiteSeed + static_cast<std::uint64_t>(id), salt);
}

std::string fixed(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

// ---------------------------------------------------------------------------

CriterionResult det_upper_bound() {
    CriterionResult r;
    std::ostringstream table;
    table << "trace_id,model,n,det_cost,opt_cost,bound\n";
    std::size_t checked = 0, zero_opt = 0, violations = 0;
    double worst = 0.0;
    for (const Model model : kModels) {
        for (std::size_t i = 0; i < kDetTracesPerModel; ++i) {
            const std::size_t n = 4 + i % 13;
            const auto trace = random_trace(model, n, criterion_seed(1, i + (model == Model::lines ? 1'000'000 : 0)));
            const Cost det = run(Algorithm::det, trace, 0, {kDefaultItemCap, false}).total;
            const Cost opt = dp_opt(trace).cost;
            const Cost bound = 2 * (n - 1) * opt;
            table << trace_id(trace) << ',' << to_string(model) << ',' << n << ',' << det << ',' << opt << ','
                  << bound << '\n';
            if (opt == 0) {
                ++zero_opt;
                continue;
            }
            ++checked;
            worst = std::max(worst, static_cast<double>(det) / static_cast<double>(bound));
            if (det > bound) {
                ++violations;
                if (r.witnesses.size() < 5) r.witnesses.push_back(trace);
            }
        }
    }
    r.pass = violations == 0 && checked > 0;
    r.detail = std::to_string(checked) + " traces checked (" + std::to_string(zero_opt) + " with opt 0), " +
               std::to_string(violations) + " violations, max det/bound " + fixed(worst);
    r.table = table.str();
    return r;
}

CriterionResult det_lower_bound_duel() {
    CriterionResult r;
    std::ostringstream table;
    table << "n,det_cost,opt_cost,ratio,alternations\n";
    std::vector<DuelReport> duels;
    bool opt_small = true;
    for (const std::size_t n : {9, 13, 17}) {
        duels.push_back(duel_det_middle_line(n));
        const auto& d = duels.back();
        table << n << ',' << d.det_cost << ',' << d.opt_cost << ',' << format_ratio(d.det_cost, d.opt_cost) << ','
              << d.alternations << '\n';
        if (d.opt_cost == 0 || d.opt_cost > n) opt_small = false;
    }
    const double cost_growth = static_cast<double>(duels[2].det_cost) / static_cast<double>(duels[0].det_cost);
    const double ratio_growth = opt_small ? duels[2].ratio() / duels[0].ratio() : 0.0;
    r.pass = opt_small && cost_growth >= kDuelCostGrowth && ratio_growth >= kDuelRatioGrowth;
    r.detail = "cost " + std::to_string(duels[0].det_cost) + "/" + std::to_string(duels[1].det_cost) + "/" +
               std::to_string(duels[2].det_cost) + ", opt " + std::to_string(duels[0].opt_cost) + "/" +
               std::to_string(duels[1].opt_cost) + "/" + std::to_string(duels[2].opt_cost) + ", cost(17)/cost(9) " +
               fixed(cost_growth) + ", ratio(17)/ratio(9) " + fixed(ratio_growth);
    r.table = table.str();
    return r;
}

CriterionResult rand_bound(int id, Model model) {
    CriterionResult r;
    std::ostringstream table;
    table << "trace_id,n,opt_cost,mean_cost,std_error,bound\n";
    std::size_t checked = 0, zero_opt = 0, violations = 0;
    double worst = 0.0;
    for (const std::size_t n : {8, 16, 32, 64}) {
        for (std::size_t i = 0; i < kRandTracesPerSize; ++i) {
            ExperimentConfig cfg;
            cfg.trace = random_trace(model, n, criterion_seed(id, n * 1000 + i));
            cfg.algo = Algorithm::rand;
            cfg.trials = kRandTrials;
            cfg.master_seed = criterion_seed(id, n * 1000 + i + 500);
            const auto result = run_experiment(std::move(cfg));
            const double bound = bound_for_trace(result.config.trace, result.opt);
            table << result.config.trace_id << ',' << n << ',' << result.opt.cost << ','
                  << fixed(result.stats.mean, 3) << ',' << fixed(result.stats.std_error, 3) << ','
                  << fixed(bound, 3) << '\n';
            bool ok = true;
            if (result.opt.cost == 0) {
                ++zero_opt;
                ok = result.stats.max == 0.0;
            } else {
                ++checked;
                worst = std::max(worst, result.stats.mean / bound);
                ok = result.stats.mean < bound;
            }
            if (!ok) {
                ++violations;
                if (r.witnesses.size() < 5) r.witnesses.push_back(result.config.trace);
            }
        }
    }
    r.pass = violations == 0;
    r.detail = std::to_string(checked) + " traces (" + std::to_string(zero_opt) + " with opt 0), " +
               std::to_string(violations) + " violations, max mean/bound " + fixed(worst);
    r.table = table.str();
    return r;
}

CriterionResult rand_cliques_bound() { return rand_bound(3, Model::cliques); }
CriterionResult rand_lines_bound() { return rand_bound(4, Model::lines); }

CriterionResult placement_frequencies(int id, LemmaKind kind, Model model) {
    CriterionResult r;
    std::ostringstream table;
    table << "trace_id,n,label,expected,observed,z_score,pass\n";
    std::size_t checks = 0, failed = 0;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < kFrequencyTraces; ++i) {
        const std::size_t n = 4 + 2 * i;  // 4, 6, ..., 12
        LemmaParams params;
        params.trials = kFrequencyTrials;
        params.seed = criterion_seed(id, i + 100);
        params.trace = random_trace(model, n, criterion_seed(id, i));
        const auto report = verify_lemma(kind, params);
        for (const auto& c : report.checks) {
            ++checks;
            worst_z = std::max(worst_z, std::abs(c.z_score));
            if (!c.pass) ++failed;
            table << report.trace_id << ',' << n << ',' << c.label << ',' << c.expected << ','
                  << fixed(c.observed, 6) << ',' << fixed(c.z_score, 3) << ',' << (c.pass ? 1 : 0) << '\n';
        }
        if (!report.pass) r.witnesses.push_back(*params.trace);
    }
    r.pass = failed == 0 && checks > 0;
    r.detail = std::to_string(checks) + " tracked frequencies on " + std::to_string(kFrequencyTraces) +
               " traces, " + std::to_string(failed) + " beyond " + fixed(kLemmaSigmas, 0) + " sigma, max |z| " +
               fixed(worst_z, 3);
    r.table = table.str();
    return r;
}

CriterionResult left_right_frequencies() {
    return placement_frequencies(5, LemmaKind::left_right, Model::cliques);
}
CriterionResult orientation_frequencies() {
    return placement_frequencies(6, LemmaKind::orientation, Model::lines);
}

CriterionResult oracle_equivalence() {
    CriterionResult r;
    std::ostringstream table;
    table << "trace_id,model,n,k,dp_opt,exhaustive_opt\n";
    std::size_t compared = 0, gaps = 0;
    for (const Model model : kModels) {
        const std::uint64_t salt = model == Model::lines ? 1'000'000 : 0;
        Rng pick(criterion_seed(7, salt + 999'999));
        const auto check = [&](std::size_t n, std::uint64_t index) {
            const std::size_t k = n == 1 ? 0 : 1 + static_cast<std::size_t>(pick.below(n - 1));
            const auto trace = random_trace(model, n, criterion_seed(7, salt + index), k);
            const Cost dp = dp_opt(trace).cost;
            const Cost ex = exhaustive_opt(trace).cost;
            ++compared;
            if (dp != ex) {
                ++gaps;
                r.witnesses.push_back(trace);
                table << trace_id(trace) << ',' << to_string(model) << ',' << n << ',' << k << ',' << dp << ','
                      << ex << '\n';
            }
        };
        for (std::size_t i = 0; i < kOracleTracesSmall; ++i) check(2 + i % 5, i);
        for (std::size_t i = 0; i < kOracleTracesSeven; ++i) check(7, kOracleTracesSmall + i);
    }
    r.pass = gaps == 0;
    r.detail = std::to_string(compared) + " traces compared, " + std::to_string(gaps) + " gaps";
    r.table = table.str();
    return r;
}

CriterionResult feasibility_characterization() {
    CriterionResult r;
    std::size_t partitions = 0, permutations = 0, mismatches = 0;
    for (const Model model : kModels) {
        const std::uint64_t salt = model == Model::lines ? 1'000'000 : 0;
        Rng pick(criterion_seed(8, salt + 999'999));
        for (std::size_t i = 0; i < kPartitionsPerModel; ++i) {
            const std::size_t n = 4 + i % 4;
            const auto k = static_cast<std::size_t>(pick.below(n));
            const auto trace = random_trace(model, n, criterion_seed(8, salt + i), k);
            const auto parts = replay_components(trace, k);

            std::vector<NodeId> order(n);
            std::iota(order.begin(), order.end(), NodeId{0});
            std::vector<std::pair<Permutation, Cost>> all;
            Cost best = ~Cost{0};
            do {
                Permutation p(order);
                const Cost c = arrangement_cost(p, parts);
                best = std::min(best, c);
                all.emplace_back(std::move(p), c);
            } while (std::next_permutation(order.begin(), order.end()));

            bool ok = minla_optimum(parts) == best;
            for (const auto& [p, c] : all) {
                ++permutations;
                if (is_minla(p, parts) != (c == best)) {
                    ++mismatches;
                    ok = false;
                }
            }
            ++partitions;
            if (!ok && r.witnesses.size() < 5) r.witnesses.push_back(trace);
        }
    }
    r.pass = mismatches == 0 && r.witnesses.empty();
    r.detail = std::to_string(partitions) + " partitions, " + std::to_string(permutations) + " permutations, " +
               std::to_string(mismatches) + " mismatches";
    return r;
}

CriterionResult tree_sandwich() {
    CriterionResult r;
    std::ostringstream table;
    table << "n,samples,mean_rand,mean_opt,ratio,lower,upper\n";
    std::vector<double> ratios;
    bool inside = true;
    std::string summary;
    for (const unsigned q : {4U, 6U, 8U}) {
        const std::size_t n = std::size_t{1} << q;
        double rand_sum = 0.0, opt_sum = 0.0;
        for (std::size_t s = 0; s < kTreeSamples; ++s) {
            const auto trace = tree_adversary({q, criterion_seed(9, q * 100'000 + s)});
            rand_sum += static_cast<double>(
                run(Algorithm::rand, trace, criterion_seed(9, q * 100'000 + s + 50'000), {kDefaultItemCap, false})
                    .total);
            opt_sum += static_cast<double>(dp_opt(trace).cost);
        }
        const double ratio = rand_sum / opt_sum;
        const double lower = std::log2(static_cast<double>(n)) / 16.0;
        const double upper = 8.0 * harmonic_number(n).value;
        ratios.push_back(ratio);
        if (!(ratio >= lower && ratio <= upper)) inside = false;
        table << n << ',' << kTreeSamples << ',' << fixed(rand_sum / kTreeSamples, 3) << ','
              << fixed(opt_sum / kTreeSamples, 3) << ',' << fixed(ratio, 6) << ',' << fixed(lower, 6) << ','
              << fixed(upper, 6) << '\n';
        summary += (summary.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " ratio " +
                   fixed(ratio) + " in [" + fixed(lower) + ", " + fixed(upper) + "]";
    }
    bool increasing = true;
    for (std::size_t i = 1; i < ratios.size(); ++i) increasing = increasing && ratios[i] > ratios[i - 1];
    r.pass = inside && increasing;
    r.detail = summary + (increasing ? ", increasing" : ", NOT increasing");
    r.table = table.str();
    return r;
}

CriterionResult algebraic_lemmas() {
    CriterionResult r;
    std::ostringstream table;
    table << "lemma,label,pass\n";
    bool ok = true;
    std::string summary;
    for (const LemmaKind kind : {LemmaKind::harmonic, LemmaKind::identities}) {
        LemmaParams params;
        params.trials = kAlgebraInstances;
        params.seed = criterion_seed(10, static_cast<std::uint64_t>(kind));
        const auto report = verify_lemma(kind, params);
        std::size_t failed = 0;
        for (const auto& c : report.checks) {
            table << to_string(kind) << ',' << c.label << ',' << (c.pass ? 1 : 0) << '\n';
            if (!c.pass) ++failed;
        }
        ok = ok && report.pass;
        summary += (summary.empty() ? "" : ", ") + std::string(to_string(kind)) + ": " +
                   std::to_string(report.trials) + " instances, " + std::to_string(failed) + " failed checks";
    }
    r.pass = ok;
    r.detail = summary;
    r.table = table.str();
    return r;
}

// Replays every event but the last, then retries the last step under many
// seeds, collecting each distinct outcome once.
struct Outcome {
    Permutation result;
    StepReport report;
};

std::vector<Outcome> last_step_outcomes(const RevealTrace& trace, std::size_t seeds) {
    AlgoState base = AlgoState::initial(trace);
    Rng warmup(0);
    for (std::size_t i = 0; i + 1 < trace.k(); ++i) step(Algorithm::rand, base, trace, i, warmup);
    std::vector<Outcome> outcomes;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        AlgoState state = base;
        Rng rng(criterion_seed(11, s));
        step(Algorithm::rand, state, trace, trace.k() - 1, rng);
        const bool seen = std::any_of(outcomes.begin(), outcomes.end(),
                                      [&](const Outcome& o) { return o.result == state.current; });
        if (!seen) outcomes.push_back({state.current, state.step_log.back()});
    }
    std::sort(outcomes.begin(), outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.report.total() < b.report.total(); });
    return outcomes;
}

CriterionResult coin_vectors() {
    CriterionResult r;
    std::ostringstream detail;
    bool ok = true;

    // x=0, y1=1, y2=2, z1=3, z2=4; Z={3,4} revealed first, then x joins it.
    {
        const RevealTrace trace{Model::cliques, 5, Permutation::identity(5), {{3, 4}, {0, 3}}};
        const auto outcomes = last_step_outcomes(trace, 256);
        const CoinWeights expect{2, 1, 3};
        ok = ok && outcomes.size() == 2;
        if (outcomes.size() == 2) {
            const auto& x_moves = outcomes[0];
            const auto& z_moves = outcomes[1];
            ok = ok && x_moves.result == Permutation({1, 2, 0, 3, 4}) && x_moves.report.total() == 2 &&
                 x_moves.report.move == MoveChoice::move_x && x_moves.report.move_coin == expect &&
                 x_moves.report.probability == Rational(2, 3);
            ok = ok && z_moves.result == Permutation({0, 3, 4, 1, 2}) && z_moves.report.total() == 4 &&
                 z_moves.report.move == MoveChoice::move_z && z_moves.report.move_coin == expect &&
                 z_moves.report.probability == Rational(1, 3);
            detail << "clique move " << to_string(x_moves.report.probability) << " / "
                   << to_string(z_moves.report.probability);
        }
    }
    // X = path (0,1), Z = path (2,3,4), identity layout; the edge joins the
    // left ends 0 and 2.
    {
        const RevealTrace trace{Model::lines, 5, Permutation::identity(5), {{0, 1}, {2, 3}, {3, 4}, {0, 2}}};
        const auto outcomes = last_step_outcomes(trace, 256);
        const RearrangeWeights expect{9, 1, 10};
        ok = ok && outcomes.size() == 2;
        if (outcomes.size() == 2) {
            const auto& fwd = outcomes[0];
            const auto& rev = outcomes[1];
            ok = ok && fwd.result == Permutation({1, 0, 2, 3, 4}) && fwd.report.total() == 1 &&
                 fwd.report.rearrange == RearrangeChoice::forward && fwd.report.rearrange_coin == expect;
            ok = ok && rev.result == Permutation({4, 3, 2, 0, 1}) && rev.report.total() == 9 &&
                 rev.report.rearrange == RearrangeChoice::reverse && rev.report.rearrange_coin == expect;
            const Rational p_fwd(static_cast<std::int64_t>(expect.forward_num),
                                 static_cast<std::int64_t>(expect.denom));
            const Rational p_rev(static_cast<std::int64_t>(expect.reverse_num),
                                 static_cast<std::int64_t>(expect.denom));
            ok = ok && p_fwd == Rational(9, 10) && p_rev == Rational(1, 10);
            detail << ", line orientation " << to_string(p_fwd) << " / " << to_string(p_rev);
        }
    }
    r.pass = ok;
    r.detail = detail.str();
    if (!ok) r.detail += " (mismatch)";
    return r;
}

constexpr std::array<Criterion, 11> kCriteria{{
    {1, "det-upper-bound", det_upper_bound},
    {2, "det-lower-bound-duel", det_lower_bound_duel},
    {3, "rand-cliques-bound", rand_cliques_bound},
    {4, "rand-lines-bound", rand_lines_bound},
    {5, "left-right-frequencies", left_right_frequencies},
    {6, "orientation-frequencies", orientation_frequencies},
    {7, "oracle-equivalence", oracle_equivalence},
    {8, "feasibility-characterization", feasibility_characterization},
    {9, "tree-adversary-sandwich", tree_sandwich},
    {10, "algebraic-lemmas", algebraic_lemmas},
    {11, "coin-test-vectors", coin_vectors},
}};

}  // namespace

std::span<const Criterion> acceptance_criteria() { return kCriteria; }

CriterionResult run_criterion(const Criterion& criterion) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
        result = criterion.run();
    } catch (const std::exception& e) {
        result.pass = false;
        result.detail = std::string("error: ") + e.what();
    }
    result.id = criterion.id;
    result.name = std::string(criterion.name);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string format_result(const CriterionResult& result) {
    char head[128];
    std::snprintf(head, sizeof head, "%s %2d %-30s (%.1f s)  ", result.pass ? "PASS" : "FAIL", result.id,
                  result.name.c_str(), result.seconds);
    return head + result.detail;
}

void write_suite_artifacts(const std::filesystem::path& dir, std::span<const CriterionResult> results) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json criteria = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        criteria.push_back(
            {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
        char stem[32];
        std::snprintf(stem, sizeof stem, "criterion_%02d", r.id);
        if (!r.table.empty()) std::ofstream(dir / (std::string(stem) + ".csv")) << r.table;
        for (std::size_t k = 0; k < r.witnesses.size(); ++k) {
            save_trace(r.witnesses[k], (dir / ("witness_" + std::to_string(r.id) + "_" + std::to_string(k) + ".trace"))
                                           .string());
        }
    }
    const nlohmann::ordered_json doc{{"tool", "minla"},
                                     {"version", kToolVersion},
                                     {"generator", kGeneratorName},
                                     {"seed", kSuiteSeed},
                                     {"pass", all},
                                     {"criteria", std::move(criteria)}};
    std::ofstream(dir / "summary.json") << doc.dump(2) << '\n';
}

}  // namespace minla
