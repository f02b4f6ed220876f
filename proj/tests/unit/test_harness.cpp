#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "minla/harness.hpp"
#include "minla/random.hpp"

using namespace minla;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

ExperimentConfig small_config(std::uint64_t trials, std::size_t threads) {
    ExperimentConfig cfg;
    cfg.trace = random_trace(Model::lines, 10, 3);
    cfg.algo = Algorithm::rand;
    cfg.trials = trials;
    cfg.master_seed = 77;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

TEST_CASE("format_ratio") {
    CHECK(format_ratio(3, 2) == "1.500000");
    CHECK(format_ratio(1, 3) == "0.333333");
    CHECK(format_ratio(2, 3) == "0.666667");
    CHECK(format_ratio(1, 2'000'000) == "0.000001");
    CHECK(format_ratio(0, 5) == "0.000000");
    CHECK(format_ratio(0, 0) == "NA");
    CHECK(format_ratio(4, 0) == "NA");
}

TEST_CASE("RunningStats matches the two-pass formulas") {
    const std::vector<double> xs{3, 1, 4, 1, 5, 9, 2, 6};
    RunningStats s;
    for (const double x : xs) s.add(x);
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (const double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    CHECK(s.count() == xs.size());
    CHECK(s.mean() == doctest::Approx(mean));
    CHECK(s.variance() == doctest::Approx(var));
    CHECK(s.min() == 1.0);
    CHECK(s.max() == 9.0);
}

TEST_CASE("derive_seed separates trials") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("CSV output is deterministic and independent of threading") {
    const auto a = run_experiment(small_config(50, 1));
    const auto b = run_experiment(small_config(50, 3));
    std::ostringstream ca, cb;
    write_csv(ca, a);
    write_csv(cb, b);
    CHECK(ca.str() == cb.str());

    const auto rows = lines_of(ca.str());
    std::size_t header = 0;
    while (header < rows.size() && rows[header].starts_with("#")) ++header;
    REQUIRE(header < rows.size());
    CHECK(rows[header] == kCsvHeader);
    CHECK(rows.size() == header + 1 + 50);
    CHECK(rows[header + 1].starts_with(trace_id(a.config.trace) + ",rand,10,0,"));
}

TEST_CASE("trial seeds follow derive_seed") {
    const auto r = run_experiment(small_config(5, 1));
    for (const auto& rec : r.records) {
        CHECK(rec.seed == derive_seed(77, rec.trial));
        CHECK(rec.cost_total == run(Algorithm::rand, r.config.trace, rec.seed).total);
        CHECK(rec.cost_total == rec.cost_move + rec.cost_rearrange);
    }
}

TEST_CASE("zero-optimum traces report NA") {
    ExperimentConfig cfg;
    cfg.trace = {Model::lines, 3, Permutation::identity(3), {{0, 1}}};
    cfg.algo = Algorithm::det;
    const auto r = run_experiment(cfg);
    CHECK(r.opt.cost == 0);
    std::ostringstream out;
    write_csv(out, r);
    CHECK(lines_of(out.str()).back().find(",0,0,0,0,NA,") != std::string::npos);
}

TEST_CASE("JSON output parses") {
    const auto r = run_experiment(small_config(4, 1));
    std::ostringstream out;
    write_json(out, r);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["records"].size() == 4);
    CHECK(doc["opt"]["cost"] == r.opt.cost);
}

TEST_CASE("trace ids are stable hex") {
    const auto id = trace_id(random_trace(Model::cliques, 6, 1));
    CHECK(id.size() == 17);
    CHECK(id[0] == 't');
    CHECK(id == trace_id(random_trace(Model::cliques, 6, 1)));
    CHECK(id != trace_id(random_trace(Model::cliques, 6, 2)));
}

TEST_CASE("RAND on a 16-node clique trace stays under its bound") {
    ExperimentConfig cfg;
    cfg.trace = random_trace(Model::cliques, 16, 12);
    cfg.algo = Algorithm::rand;
    cfg.trials = 10'000;
    cfg.master_seed = 1;
    const auto r = run_experiment(cfg);
    CHECK(r.stats.mean <= bound_for_trace(cfg.trace, r.opt));
}

TEST_CASE("lemma verification") {
    CHECK_THROWS_AS(verify_lemma(LemmaKind::harmonic, {999, 1, std::nullopt, std::nullopt}), InvalidInput);
    for (const auto kind : {LemmaKind::left_right, LemmaKind::orientation, LemmaKind::harmonic, LemmaKind::identities}) {
        const auto report = verify_lemma(kind, {20'000, 3, std::nullopt, std::nullopt});
        CHECK(report.pass);
        CHECK_FALSE(report.checks.empty());
    }
    CHECK(parse_lemma("left-right") == LemmaKind::left_right);
    CHECK(to_string(LemmaKind::identities) == "identities");
    CHECK_FALSE(parse_lemma("lemma-9"));
}

TEST_CASE("left-right frequencies on the built-in trace") {
    const auto report = verify_lemma(LemmaKind::left_right, {50'000, 9, std::nullopt, std::nullopt});
    REQUIRE(report.checks.size() == 1);
    // {0,2} against {1} over the identity: one of two pairs in order
    CHECK(report.checks[0].expected == "1/2");
}

TEST_CASE("lemma checks reject mismatched models") {
    LemmaParams p;
    p.trials = 1000;
    p.trace = default_orientation_trace();
    CHECK_THROWS_AS(verify_lemma(LemmaKind::left_right, p), InvalidInput);
}
