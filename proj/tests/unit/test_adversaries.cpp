#include <doctest.h>

#include <algorithm>

#include "minla/adversaries.hpp"
#include "minla/algorithms.hpp"
#include "minla/harness.hpp"

using namespace minla;

TEST_CASE("tree requests for four leaves") {
    const std::vector<NodeId> leaves{7, 4, 5, 6};
    const auto events = tree_requests(leaves);
    REQUIRE(events.size() == 3);
    CHECK(events[0] == RevealEvent{7, 4});
    CHECK(events[1] == RevealEvent{5, 6});
    CHECK(events[2] == RevealEvent{4, 5});
    const std::vector<NodeId> three{0, 1, 2};
    CHECK_THROWS_AS(tree_requests(three), InvalidInput);
}

TEST_CASE("tree adversary builds the sampled path") {
    for (unsigned q = 1; q <= 7; ++q) {
        const TreeAdversaryConfig cfg{q, 100 + q};
        const auto trace = tree_adversary(cfg);
        CHECK_FALSE(validate_trace(trace));
        CHECK(trace.k() == cfg.n() - 1);
        const auto path = replay_components(trace, trace.k()).components.at(0);
        auto leaves = tree_leaf_order(cfg);
        if (path.front() != leaves.front()) std::reverse(leaves.begin(), leaves.end());
        CHECK(path == leaves);
    }
    CHECK_THROWS_AS(tree_adversary({0, 1}), InvalidInput);
    CHECK_THROWS_AS(tree_adversary({25, 1}), InvalidInput);
    CHECK_THROWS_AS(tree_adversary({3, 1}, Permutation::identity(7)), InvalidInput);
}

TEST_CASE("middle-line duel at n = 5") {
    const auto d = duel_det_middle_line(5);
    CHECK(d.induced.k() == 3);
    CHECK_FALSE(validate_trace(d.induced));
    CHECK(d.alternations >= 1);
    CHECK(d.det_cost == run(Algorithm::det, d.induced, 0).total);
}

TEST_CASE("duel ratios grow with n") {
    double last = 0.0;
    for (const std::size_t n : {9, 13, 17}) {
        const auto d = duel_det_middle_line(n);
        CHECK(d.alternations >= (n - 3) / 2);
        CHECK(d.opt_cost <= n);
        CHECK(d.det_cost == run(Algorithm::det, d.induced, 0).total);
        CHECK(d.ratio() > last);
        last = d.ratio();
    }
}

TEST_CASE("middle-line adversary protocol") {
    CHECK_THROWS_AS(MiddleLineAdversary(6), InvalidInput);
    CHECK_THROWS_AS(MiddleLineAdversary(3), InvalidInput);
    MiddleLineAdversary adv(7);
    CHECK(adv.middle() == 3);
    const auto first = adv.next(Permutation::identity(7));
    REQUIRE(first);
    CHECK(*first == RevealEvent{2, 4});
    // 2 and 4 must sit together in the answer
    CHECK_THROWS_AS(adv.next(Permutation::identity(7)), ProtocolError);
    const auto second = adv.next(Permutation({0, 1, 3, 2, 4, 5, 6}));
    REQUIRE(second);
    CHECK(*second == RevealEvent{1, 2});
}

TEST_CASE("random traces are valid and reproducible") {
    for (const Model model : {Model::cliques, Model::lines}) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const std::size_t n = 1 + seed % 10;
            const auto trace = random_trace(model, n, seed, seed % n);
            CHECK_FALSE(validate_trace(trace));
            CHECK(trace.k() == seed % n);
        }
        const auto a = random_trace(model, 9, 42);
        const auto b = random_trace(model, 9, 42);
        CHECK(emit_trace(a) == emit_trace(b));
        CHECK(a.k() == 8);
    }
    CHECK_THROWS_AS(random_trace(Model::lines, 4, 0, 4), InvalidInput);
    CHECK_THROWS_AS(random_trace(Model::lines, 0, 0), InvalidInput);
}
