#include <doctest.h>

#include "minla/adversaries.hpp"
#include "minla/arrangement.hpp"
#include "oracles.hpp"

using namespace minla;

TEST_CASE("closest clique layout breaks ties lexicographically") {
    const RevealTrace trace{Model::cliques, 3, Permutation::identity(3), {{0, 2}}};
    const auto a = closest_minla(replay_components(trace, 1), trace.pi0);
    CHECK(a.perm == Permutation({0, 2, 1}));
    CHECK(a.distance == 1);
}

TEST_CASE("closest_minla matches enumeration") {
    Rng rng(17);
    for (const Model model : {Model::cliques, Model::lines}) {
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const std::size_t n = 2 + seed % 6;
            const auto trace = random_trace(model, n, seed + 1000, rng.below(n));
            const auto parts = replay_components(trace, trace.k());
            const auto ref = oracle::random_perm(n, rng);
            const auto got = closest_minla(parts, ref);
            const auto want = oracle::closest(parts, ref);
            CHECK(got.perm == want);
            CHECK(got.distance == oracle::naive_kendall(ref, want));
        }
    }
}

TEST_CASE("order_blocks capacity") {
    std::vector<std::vector<NodeId>> blocks;
    for (NodeId v = 0; v < 23; ++v) blocks.push_back({v});
    CHECK_THROWS_AS(order_blocks(blocks, Permutation::identity(23)), CapacityExceeded);
    blocks.resize(5);
    CHECK_THROWS_AS(order_blocks(blocks, Permutation::identity(5), 4), CapacityExceeded);
    CHECK(order_blocks(blocks, Permutation::identity(5), 5).perm == Permutation::identity(5));
}

TEST_CASE("order_blocks keeps block contents") {
    const std::vector<std::vector<NodeId>> blocks{{3, 0}, {1}, {4, 2}};
    const auto a = order_blocks(blocks, Permutation::identity(5));
    // {3,0} {1} {4,2} and {1} {3,0} {4,2} tie at distance 4
    CHECK(a.perm == Permutation({1, 3, 0, 4, 2}));
    CHECK(a.distance == 4);
    CHECK(a.distance == oracle::naive_kendall(Permutation::identity(5), a.perm));
}

TEST_CASE("inversion helpers") {
    const Permutation ref({2, 0, 3, 1});
    const std::vector<NodeId> block{0, 1, 2};
    CHECK(internal_inversions(block, ref) == 2);
    CHECK(induced_order(block, ref) == std::vector<NodeId>{2, 0, 1});
    const std::vector<NodeId> a{0, 1};
    const std::vector<NodeId> b{2, 3};
    CHECK(cross_inversions(a, b, ref) == 3);
    CHECK(cross_inversions(b, a, ref) == 1);
}

TEST_CASE("closest_orientation") {
    const std::vector<NodeId> path{0, 1, 2};
    CHECK(closest_orientation(path, Permutation({2, 1, 0})) == std::vector<NodeId>{2, 1, 0});
    CHECK(closest_orientation(path, Permutation({0, 1, 2})) == std::vector<NodeId>{0, 1, 2});
    const std::vector<NodeId> pair{3, 1};
    CHECK(closest_orientation(pair, Permutation::identity(4)) == std::vector<NodeId>{1, 3});
    // three inversions each way: the smaller endpoint leads
    const std::vector<NodeId> tie{2, 0, 3, 1};
    CHECK(closest_orientation(tie, Permutation::identity(4)) == std::vector<NodeId>{1, 3, 0, 2});
}
