#include <doctest.h>

#include <cmath>

#include "minla/adversaries.hpp"
#include "minla/algorithms.hpp"
#include "minla/feasibility.hpp"
#include "minla/oracle.hpp"
#include "oracles.hpp"

using namespace minla;

TEST_CASE("three-node clique trace costs 1") {
    const RevealTrace trace{Model::cliques, 3, Permutation::identity(3), {{0, 2}, {0, 1}}};
    CHECK(dp_opt(trace).cost == 1);
    CHECK(exhaustive_opt(trace).cost == 1);
    CHECK(oracle::layered_opt(trace) == 1);
}

TEST_CASE("two paths over an interleaved start") {
    const RevealTrace trace{Model::lines, 4, Permutation({0, 2, 1, 3}), {{0, 1}, {2, 3}}};
    const Cost want = oracle::layered_opt(trace);
    CHECK(want == 1);
    CHECK(dp_opt(trace).cost == want);
    CHECK(exhaustive_opt(trace).cost == want);
}

TEST_CASE("exhaustive_opt agrees with the brute-force layered search") {
    Rng rng(4);
    for (const Model model : {Model::cliques, Model::lines}) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const std::size_t n = 2 + seed % 4;
            const auto trace = random_trace(model, n, seed + 77, 1 + rng.below(n - 1));
            CHECK(exhaustive_opt(trace).cost == oracle::layered_opt(trace));
        }
    }
}

TEST_CASE("dp_opt equals exhaustive_opt on small traces") {
    Rng rng(8);
    for (const Model model : {Model::cliques, Model::lines}) {
        for (std::uint64_t seed = 0; seed < 120; ++seed) {
            const std::size_t n = 2 + seed % 6;
            const auto trace = random_trace(model, n, seed + 3000, 1 + rng.below(n - 1));
            CHECK(dp_opt(trace).cost == exhaustive_opt(trace).cost);
        }
    }
}

TEST_CASE("dp_opt witness is feasible at every step and realizes the cost") {
    for (const Model model : {Model::cliques, Model::lines}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto trace = random_trace(model, 14, seed);
            const auto opt = dp_opt(trace);
            CHECK(kendall_tau(trace.pi0, opt.witness) == opt.cost);
            for (std::size_t i = 1; i <= trace.k(); ++i) {
                CHECK(is_minla(opt.witness, replay_components(trace, i)));
            }
        }
    }
}

TEST_CASE("no algorithm beats the optimum") {
    for (const Model model : {Model::cliques, Model::lines}) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto trace = random_trace(model, 6, seed + 11);
            const Cost opt = exhaustive_opt(trace).cost;
            CHECK(run(Algorithm::det, trace, 0).total >= opt);
            for (std::uint64_t s = 0; s < 5; ++s) CHECK(run(Algorithm::rand, trace, s).total >= opt);
        }
    }
}

TEST_CASE("exhaustive_opt size limit") {
    const auto trace = random_trace(Model::lines, 8, 1);
    CHECK_THROWS_AS(exhaustive_opt(trace), InvalidInput);
}

TEST_CASE("empty trace costs nothing") {
    const RevealTrace trace{Model::cliques, 4, Permutation({3, 1, 0, 2}), {}};
    CHECK(dp_opt(trace).cost == 0);
    CHECK(dp_opt(trace).witness == trace.pi0);
    CHECK(exhaustive_opt(trace).cost == 0);
}

TEST_CASE("bound_for_trace") {
    RevealTrace trace = random_trace(Model::cliques, 10, 2);
    const OptResult opt{7, trace.pi0};
    double h10 = 0.0;
    for (int i = 1; i <= 10; ++i) h10 += 1.0 / i;
    CHECK(bound_for_trace(trace, opt) == doctest::Approx(4.0 * h10 * 7.0));
    trace.model = Model::lines;
    CHECK(bound_for_trace(trace, opt) == doctest::Approx(8.0 * h10 * 7.0));
}
