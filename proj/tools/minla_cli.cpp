// minla: generate reveal traces, simulate DET/RAND, compute optima, verify
// the probabilistic lemmas, run adaptive duels and the acceptance suite.

#include <bit>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "minla/adversaries.hpp"
#include "minla/harness.hpp"
#include "minla/oracle.hpp"
#include "minla/suite.hpp"

namespace {

using namespace minla;

enum Exit : int { kOk = 0, kInternal = 1, kInvalid = 2, kCapacity = 3, kVerifyFailed = 4 };

/// stdout, or the file named by `path` when set.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw InvalidInput("cannot write '" + path + "'");
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct GenArgs {
    std::string kind;
    std::string model;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    const Model model = *parse_model(a.model);
    RevealTrace trace;
    if (a.kind == "random") {
        trace = random_trace(model, a.n, a.seed);
    } else {
        if (a.n < 2 || !std::has_single_bit(a.n)) throw InvalidInput("tree traces need n = 2^q with q >= 1");
        trace = tree_adversary({static_cast<unsigned>(std::countr_zero(a.n)), a.seed});
        trace.model = model;
    }
    Sink sink(a.out);
    sink.get() << emit_trace(trace);
    return kOk;
}

struct SimulateArgs {
    std::string algo;
    std::string trace;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    std::string format;
    std::string out;
    std::size_t threads = 0;
};

int cmd_simulate(const SimulateArgs& a) {
    ExperimentConfig cfg;
    cfg.trace = load_trace(a.trace);
    cfg.algo = *parse_algorithm(a.algo);
    cfg.trials = a.trials;
    cfg.master_seed = a.seed;
    cfg.threads = a.threads;
    const auto result = run_experiment(std::move(cfg));
    Sink sink(a.out);
    if (a.format == "csv") {
        write_csv(sink.get(), result);
    } else {
        write_json(sink.get(), result);
    }
    return kOk;
}

int cmd_opt(const std::string& path, bool exhaustive) {
    const auto trace = load_trace(path);
    const auto opt = exhaustive ? exhaustive_opt(trace) : dp_opt(trace);
    const nlohmann::ordered_json doc{{"tool", "minla"},
                                     {"version", kToolVersion},
                                     {"trace_id", trace_id(trace)},
                                     {"model", to_string(trace.model)},
                                     {"n", trace.n},
                                     {"k", trace.k()},
                                     {"method", exhaustive ? "exhaustive" : "dp"},
                                     {"cost", opt.cost},
                                     {"witness", to_string(opt.witness)}};
    std::cout << doc.dump(2) << '\n';
    return kOk;
}

int cmd_verify(const std::string& lemma, std::uint64_t trials, std::uint64_t seed, const std::string& trace) {
    LemmaParams params;
    params.trials = trials;
    params.seed = seed;
    if (!trace.empty()) params.trace = load_trace(trace);
    const auto report = verify_lemma(*parse_lemma(lemma), params);
    write_json(std::cout, report);
    return report.pass ? kOk : kVerifyFailed;
}

int cmd_duel(std::size_t n, const std::string& dump) {
    const auto report = duel_det_middle_line(n);
    if (!dump.empty()) save_trace(report.induced, dump);
    write_json(std::cout, report);
    return kOk;
}

int cmd_bench(const std::string& out) {
    std::vector<CriterionResult> results;
    bool all = true;
    for (const auto& c : acceptance_criteria()) {
        results.push_back(run_criterion(c));
        all = all && results.back().pass;
        std::cerr << format_result(results.back()) << std::endl;
    }
    write_suite_artifacts(out, results);
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "; artifacts in " << out << '\n';
    return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online MinLA for cliques and lines: simulation and verification"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a reveal trace");
    gen_cmd->add_option("--kind", gen.kind, "random | tree")->required()->check(CLI::IsMember({"random", "tree"}));
    gen_cmd->add_option("--model", gen.model, "lines | cliques")->required()->check(CLI::IsMember({"lines", "cliques"}));
    gen_cmd->add_option("--n", gen.n, "Number of nodes")->required();
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->required();
    gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run DET or RAND on a trace");
    sim_cmd->add_option("--algo", sim.algo, "det | rand")->required()->check(CLI::IsMember({"det", "rand"}));
    sim_cmd->add_option("--trace", sim.trace, "Trace file")->required();
    sim_cmd->add_option("--seed", sim.seed, "Master seed")->required();
    sim_cmd->add_option("--trials", sim.trials, "Number of trials")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--format", sim.format, "csv | json")->required()->check(CLI::IsMember({"csv", "json"}));
    sim_cmd->add_option("--out", sim.out, "Output file (default stdout)");
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (0: all cores)");

    std::string opt_trace;
    bool opt_exhaustive = false;
    auto* opt_cmd = app.add_subcommand("opt", "Offline optimum of a trace");
    opt_cmd->add_option("--trace", opt_trace, "Trace file")->required();
    opt_cmd->add_flag("--exhaustive", opt_exhaustive, "Layered search over all feasible permutations (n <= 7)");

    std::string lemma, verify_trace;
    std::uint64_t verify_trials = 0, verify_seed = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Check a lemma numerically");
    verify_cmd->add_option("--lemma", lemma, "left-right | orientation | harmonic | identities")
        ->required()
        ->check(CLI::IsMember({"left-right", "orientation", "harmonic", "identities"}));
    verify_cmd->add_option("--trials", verify_trials, "Monte Carlo trials or sweep instances")->required();
    verify_cmd->add_option("--seed", verify_seed, "Seed")->required();
    verify_cmd->add_option("--trace", verify_trace, "Trace file (left-right / orientation)");

    std::string duel_algo, duel_adversary, duel_dump;
    std::size_t duel_n = 0;
    auto* duel_cmd = app.add_subcommand("duel", "DET against an adaptive adversary");
    duel_cmd->add_option("--algo", duel_algo, "det")->required()->check(CLI::IsMember({"det"}));
    duel_cmd->add_option("--adversary", duel_adversary, "middle-line")
        ->required()
        ->check(CLI::IsMember({"middle-line"}));
    duel_cmd->add_option("--n", duel_n, "Odd number of nodes >= 5")->required();
    duel_cmd->add_option("--dump-trace", duel_dump, "Write the induced trace here");

    std::string suite, bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "Run the acceptance experiments");
    bench_cmd->add_option("--suite", suite, "paper")->required()->check(CLI::IsMember({"paper"}));
    bench_cmd->add_option("--out", bench_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*sim_cmd) return cmd_simulate(sim);
        if (*opt_cmd) return cmd_opt(opt_trace, opt_exhaustive);
        if (*verify_cmd) return cmd_verify(lemma, verify_trials, verify_seed, verify_trace);
        if (*duel_cmd) return cmd_duel(duel_n, duel_dump);
        if (*bench_cmd) return cmd_bench(bench_out);
    } catch (const CapacityExceeded& e) {
        std::cerr << "capacity exceeded: " << e.what() << '\n';
        return kCapacity;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const InstanceMismatch& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
