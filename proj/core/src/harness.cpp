#include "minla/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "minla/random.hpp"

namespace minla {

using ojson = nlohmann::ordered_json;

std::string trace_id(const RevealTrace& trace) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : emit_trace(trace)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "t%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void RunningStats::add(double x) noexcept {
    ++count_;
    if (count_ == 1) {
        min_ = max_ = x;
    } else {
        min_ = std::min(min_, x);
        max_ = std::max(max_, x);
    }
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

// ---------------------------------------------------------------------------
// experiments

ExperimentResult run_experiment(ExperimentConfig config) {
    if (config.trials == 0) throw InvalidInput("trials must be at least 1");
    if (const auto diag = validate_trace(config.trace)) throw InvalidInput("invalid trace: " + diag->reason);
    if (config.trace_id.empty()) config.trace_id = trace_id(config.trace);

    ExperimentResult result;
    result.opt = dp_opt(config.trace, config.cap);
    result.records.resize(config.trials);

    const RunOptions options{config.cap, /*keep_log=*/false};
    auto work = [&](std::uint64_t first, std::uint64_t last) {
        for (std::uint64_t t = first; t < last; ++t) {
            const std::uint64_t seed = derive_seed(config.master_seed, t);
            const auto run_result = run(config.algo, config.trace, seed, options);
            result.records[t] = {t, seed, run_result.state.move_cost, run_result.state.rearrange_cost,
                                 run_result.total};
        }
    };

    std::size_t threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<std::size_t>(std::min<std::uint64_t>(threads, config.trials));
    if (threads <= 1) {
        work(0, config.trials);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        const std::uint64_t chunk = (config.trials + threads - 1) / threads;
        for (std::size_t i = 0; i < threads; ++i) {
            const std::uint64_t first = i * chunk;
            const std::uint64_t last = std::min<std::uint64_t>(config.trials, first + chunk);
            pool.emplace_back([&, i, first, last] {
                try {
                    work(first, last);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    RunningStats total;
    double move_sum = 0.0, rearrange_sum = 0.0;
    for (const auto& r : result.records) {
        total.add(static_cast<double>(r.cost_total));
        move_sum += static_cast<double>(r.cost_move);
        rearrange_sum += static_cast<double>(r.cost_rearrange);
    }
    auto& s = result.stats;
    s.trials = total.count();
    s.mean = total.mean();
    s.variance = total.variance();
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.trials));
    s.min = total.min();
    s.max = total.max();
    s.mean_move = move_sum / static_cast<double>(s.trials);
    s.mean_rearrange = rearrange_sum / static_cast<double>(s.trials);

    result.config = std::move(config);
    return result;
}

std::string format_ratio(Cost total, Cost opt) {
    if (opt == 0) return "NA";
    using Wide = Uint128;
    constexpr Cost kScale = 1'000'000;
    const Wide scaled = (Wide{total} * kScale * 2 + opt) / (Wide{opt} * 2);
    const auto whole = static_cast<unsigned long long>(scaled / kScale);
    const auto frac = static_cast<unsigned long long>(scaled % kScale);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%llu.%06llu", whole, frac);
    return buf;
}

namespace {

ojson meta_json(const ExperimentResult& result) {
    const auto& c = result.config;
    return ojson{{"tool", "minla"},
                 {"version", kToolVersion},
                 {"generator", kGeneratorName},
                 {"trace_id", c.trace_id},
                 {"model", to_string(c.trace.model)},
                 {"n", c.trace.n},
                 {"k", c.trace.k()},
                 {"algo", to_string(c.algo)},
                 {"trials", c.trials},
                 {"master_seed", c.master_seed},
                 {"cap", c.cap}};
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentResult& result) {
    const auto& c = result.config;
    out << "# minla " << kToolVersion << " generator=" << kGeneratorName << '\n';
    out << "# trace_id=" << c.trace_id << " model=" << to_string(c.trace.model) << " n=" << c.trace.n
        << " k=" << c.trace.k() << " algo=" << to_string(c.algo) << " trials=" << c.trials
        << " master_seed=" << c.master_seed << '\n';
    out << "# opt_witness=" << to_string(result.opt.witness) << '\n';
    out << kCsvHeader << '\n';
    const std::string opt = std::to_string(result.opt.cost);
    for (const auto& r : result.records) {
        out << c.trace_id << ',' << to_string(c.algo) << ',' << c.trace.n << ',' << r.trial << ',' << r.cost_move
            << ',' << r.cost_rearrange << ',' << r.cost_total << ',' << opt << ','
            << format_ratio(r.cost_total, result.opt.cost) << ',' << r.seed << '\n';
    }
}

void write_json(std::ostream& out, const ExperimentResult& result) {
    const auto& s = result.stats;
    ojson doc;
    doc["meta"] = meta_json(result);
    doc["opt"] = {{"cost", result.opt.cost}, {"witness", to_string(result.opt.witness)}};
    doc["stats"] = {{"trials", s.trials},       {"mean", s.mean},         {"variance", s.variance},
                    {"std_error", s.std_error}, {"min", s.min},           {"max", s.max},
                    {"mean_move", s.mean_move}, {"mean_rearrange", s.mean_rearrange}};
    ojson records = ojson::array();
    for (const auto& r : result.records) {
        records.push_back({{"trace_id", result.config.trace_id},
                           {"algo", to_string(result.config.algo)},
                           {"n", result.config.trace.n},
                           {"trial", r.trial},
                           {"cost_move", r.cost_move},
                           {"cost_rearrange", r.cost_rearrange},
                           {"cost_total", r.cost_total},
                           {"opt_cost", result.opt.cost},
                           {"ratio", format_ratio(r.cost_total, result.opt.cost)},
                           {"seed", r.seed}});
    }
    doc["records"] = std::move(records);
    out << doc.dump(2) << '\n';
}

void write_step_log(std::ostream& out, const std::vector<StepReport>& log) {
    for (const auto& r : log) {
        const ojson line{{"event_index", r.event_index},
                         {"move_cost", r.move_cost},
                         {"rearrange_cost", r.rearrange_cost},
                         {"choice", r.choice()},
                         {"prob_num", r.probability.numerator()},
                         {"prob_den", r.probability.denominator()}};
        out << line.dump() << '\n';
    }
}

// ---------------------------------------------------------------------------
// lemma verification

std::string_view to_string(LemmaKind kind) noexcept {
    switch (kind) {
        case LemmaKind::left_right: return "left-right";
        case LemmaKind::orientation: return "orientation";
        case LemmaKind::harmonic: return "harmonic";
        case LemmaKind::identities: return "identities";
    }
    return "?";
}

std::optional<LemmaKind> parse_lemma(std::string_view text) noexcept {
    for (const auto kind : {LemmaKind::left_right, LemmaKind::orientation, LemmaKind::harmonic,
                            LemmaKind::identities}) {
        if (text == to_string(kind)) return kind;
    }
    return std::nullopt;
}

RevealTrace default_left_right_trace() {
    return {Model::cliques, 3, Permutation::identity(3), {{0, 2}, {0, 1}}};
}

RevealTrace default_orientation_trace() {
    return {Model::lines, 2, Permutation(std::vector<NodeId>{1, 0}), {{0, 1}}};
}

namespace {

std::string nodes_label(const std::vector<NodeId>& nodes) {
    std::string s = "{";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(nodes[i]);
    }
    return s + "}";
}

LemmaCheck frequency_check(std::string label, const Rational& expected, std::uint64_t hits, std::uint64_t trials) {
    LemmaCheck c;
    c.label = std::move(label);
    c.expected = to_string(expected);
    c.expected_value = to_double(expected);
    c.observed = static_cast<double>(hits) / static_cast<double>(trials);
    const double se = std::sqrt(c.expected_value * (1.0 - c.expected_value) / static_cast<double>(trials));
    if (expected.numerator() == 0 || expected.numerator() == expected.denominator()) {
        // degenerate coin: the frequency must match exactly
        c.z_score = 0.0;
        c.pass = (expected.numerator() == 0) ? hits == 0 : hits == trials;
    } else {
        c.z_score = (c.observed - c.expected_value) / se;
        c.pass = std::abs(c.z_score) <= kLemmaSigmas;
    }
    return c;
}

RevealTrace prefix_of(const RevealTrace& trace, std::size_t prefix) {
    RevealTrace out = trace;
    out.events.resize(prefix);
    return out;
}

LemmaReport placement_frequencies(LemmaKind kind, const LemmaParams& params) {
    const bool left_right = kind == LemmaKind::left_right;
    const RevealTrace trace =
        params.trace ? *params.trace : (left_right ? default_left_right_trace() : default_orientation_trace());
    if (const auto diag = validate_trace(trace)) throw InvalidInput("invalid trace: " + diag->reason);
    if (left_right && trace.model != Model::cliques) throw InvalidInput("left-right check needs a cliques trace");
    if (!left_right && trace.model != Model::lines) throw InvalidInput("orientation check needs a lines trace");

    const std::size_t n = trace.n;
    const std::size_t k = trace.k();
    const std::size_t spread = std::max<std::size_t>(1, n > 4 ? n - 4 : 0);
    std::size_t prefix = left_right ? std::min({k, n - std::min<std::size_t>(n, 2), spread}) : std::min(k, spread);
    if (params.prefix) {
        if (*params.prefix > k) throw InvalidInput("lemma prefix exceeds the trace length");
        prefix = *params.prefix;
    }
    const RevealTrace head = prefix_of(trace, prefix);
    const ComponentPartition parts = replay_components(head, prefix);

    // what to track: ordered component pairs, or multi-node paths
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> paths;
    for (std::size_t a = 0; a < parts.components.size(); ++a) {
        if (left_right) {
            for (std::size_t b = a + 1; b < parts.components.size(); ++b) pairs.emplace_back(a, b);
        } else if (parts.components[a].size() >= 2) {
            paths.push_back(a);
        }
    }

    std::vector<std::uint64_t> hits(left_right ? pairs.size() : paths.size(), 0);
    const RunOptions options{kDefaultItemCap, /*keep_log=*/false};
    for (std::uint64_t t = 0; t < params.trials; ++t) {
        const auto result = run(Algorithm::rand, head, derive_seed(params.seed, t), options);
        const auto& perm = result.state.current;
        if (left_right) {
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto& x = parts.components[pairs[i].first];
                const auto& y = parts.components[pairs[i].second];
                if (perm.pos_of(x.front()) < perm.pos_of(y.front())) ++hits[i];
            }
        } else {
            for (std::size_t i = 0; i < paths.size(); ++i) {
                const auto& path = parts.components[paths[i]];
                if (perm.pos_of(path.front()) < perm.pos_of(path.back())) ++hits[i];
            }
        }
    }

    LemmaReport report{kind, params.trials, params.seed, trace_id(trace), {}, true};
    if (left_right) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& x = parts.components[pairs[i].first];
            const auto& y = parts.components[pairs[i].second];
            report.checks.push_back(frequency_check(nodes_label(x) + " left of " + nodes_label(y),
                                                    left_right_probability(x, y, trace.pi0), hits[i],
                                                    params.trials));
        }
    } else {
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const auto& path = parts.components[paths[i]];
            std::string label = "orientation (";
            for (std::size_t j = 0; j < path.size(); ++j) label += (j ? "," : "") + std::to_string(path[j]);
            report.checks.push_back(frequency_check(label + ")", orientation_probability(path, trace.pi0),
                                                    hits[i], params.trials));
        }
    }
    for (const auto& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

double unit_double(Rng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

LemmaCheck sweep_check(std::string label, std::uint64_t passed, std::uint64_t total) {
    LemmaCheck c;
    c.label = std::move(label);
    c.expected = std::to_string(total) + "/" + std::to_string(total);
    c.expected_value = 1.0;
    c.observed = static_cast<double>(passed) / static_cast<double>(total);
    c.pass = passed == total;
    return c;
}

LemmaReport harmonic_sweep(const LemmaParams& params) {
    LemmaReport report{LemmaKind::harmonic, params.trials, params.seed, "", {}, true};
    std::uint64_t ok_prefix = 0, ok_squared = 0, ok_product = 0;
    Rng rng(params.seed);
    std::vector<std::uint64_t> series;
    for (std::uint64_t t = 0; t < params.trials; ++t) {
        series.resize(1 + rng.below(50));
        for (auto& s : series) s = 1 + rng.below(20);
        const auto check = check_harmonic_bounds(series);
        ok_prefix += check.prefix_ratio;
        ok_squared += check.squared_merge;
        ok_product += check.adjacent_product;
    }
    report.checks.push_back(sweep_check("prefix-ratio bound <= H_S", ok_prefix, params.trials));
    report.checks.push_back(sweep_check("squared-merge bound <= 2 H_S", ok_squared, params.trials));
    report.checks.push_back(sweep_check("adjacent-product bound <= 2 H_S", ok_product, params.trials));
    for (const auto& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

LemmaReport identity_sweep(const LemmaParams& params) {
    LemmaReport report{LemmaKind::identities, params.trials, params.seed, "", {}, true};
    std::uint64_t ok_expectation = 0, ok_product = 0;
    Rng rng(params.seed);
    std::vector<double> a, b;
    for (std::uint64_t t = 0; t < params.trials; ++t) {
        const auto n = static_cast<std::size_t>(1 + rng.below(10));
        a.resize(n);
        b.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = 10.0 * unit_double(rng);
            b[i] = unit_double(rng);
        }
        const auto check = check_identity_lemmas(a, b);
        ok_expectation += check.expectation_identity;
        ok_product += check.product_bound;
    }
    report.checks.push_back(sweep_check("expectation identity (|lhs-rhs| <= 1e-9)", ok_expectation, params.trials));
    report.checks.push_back(sweep_check("product bound (lhs <= rhs + 1e-9)", ok_product, params.trials));
    for (const auto& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

}  // namespace

LemmaReport verify_lemma(LemmaKind kind, const LemmaParams& params) {
    if (params.trials < kMinLemmaTrials) {
        throw InvalidInput("verify needs at least " + std::to_string(kMinLemmaTrials) + " trials, got " +
                           std::to_string(params.trials));
    }
    switch (kind) {
        case LemmaKind::left_right:
        case LemmaKind::orientation: return placement_frequencies(kind, params);
        case LemmaKind::harmonic: return harmonic_sweep(params);
        case LemmaKind::identities: return identity_sweep(params);
    }
    throw InvalidInput("unknown lemma kind");
}

void write_json(std::ostream& out, const LemmaReport& report) {
    ojson checks = ojson::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"label", c.label},
                          {"expected", c.expected},
                          {"expected_value", c.expected_value},
                          {"observed", c.observed},
                          {"z_score", c.z_score},
                          {"pass", c.pass}});
    }
    const ojson doc{{"tool", "minla"},
                    {"version", kToolVersion},
                    {"generator", kGeneratorName},
                    {"lemma", to_string(report.kind)},
                    {"trials", report.trials},
                    {"seed", report.seed},
                    {"trace_id", report.trace_id},
                    {"sigmas", kLemmaSigmas},
                    {"pass", report.pass},
                    {"checks", std::move(checks)}};
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// duel

DuelReport duel_det_middle_line(std::size_t n, std::size_t cap) {
    MiddleLineAdversary adversary(n);
    AlgoState state = AlgoState::initial(adversary.induced_trace());
    DuelReport report;
    report.n = n;
    std::size_t index = 0;
    while (adversary.next(state.current)) {
        det_step(state, adversary.induced_trace(), index++, cap);
        report.sides.push_back(adversary.side_of_middle(state.current));
    }
    for (std::size_t i = 1; i < report.sides.size(); ++i) {
        if (report.sides[i] != report.sides[i - 1]) ++report.alternations;
    }
    report.det_cost = state.cumulative_cost;
    report.induced = adversary.induced_trace();
    report.opt_cost = dp_opt(report.induced, cap).cost;
    return report;
}

void write_json(std::ostream& out, const DuelReport& report) {
    ojson sides = ojson::array();
    for (const auto s : report.sides) sides.push_back(s == MiddleLineAdversary::Side::left ? "left" : "right");
    const ojson doc{{"tool", "minla"},
                    {"version", kToolVersion},
                    {"algo", "det"},
                    {"adversary", "middle-line"},
                    {"n", report.n},
                    {"det_cost", report.det_cost},
                    {"opt_cost", report.opt_cost},
                    {"ratio", format_ratio(report.det_cost, report.opt_cost)},
                    {"alternations", report.alternations},
                    {"sides", std::move(sides)},
                    {"trace_id", trace_id(report.induced)}};
    out << doc.dump(2) << '\n';
}

}  // namespace minla
