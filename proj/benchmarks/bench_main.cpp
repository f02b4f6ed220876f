#include <benchmark/benchmark.h>

#include <numeric>

#include "minla/adversaries.hpp"
#include "minla/algorithms.hpp"
#include "minla/arrangement.hpp"
#include "minla/oracle.hpp"
#include "minla/random.hpp"

namespace {

using namespace minla;

Permutation shuffled(std::size_t n, std::uint64_t seed) {
    std::vector<NodeId> v(n);
    std::iota(v.begin(), v.end(), NodeId{0});
    Rng rng(seed);
    rng.shuffle(std::span<NodeId>(v));
    return Permutation(std::move(v));
}

void BM_KendallTau(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = shuffled(n, 1), q = shuffled(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(kendall_tau(p, q));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTau)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_OrderBlocks(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<NodeId>> blocks(m);
    for (NodeId v = 0; v < 2 * m; ++v) blocks[v % m].push_back(v);
    const auto ref = shuffled(2 * m, 3);
    for (auto _ : state) benchmark::DoNotOptimize(order_blocks(blocks, ref).distance);
}
BENCHMARK(BM_OrderBlocks)->DenseRange(8, 18, 2)->Unit(benchmark::kMillisecond);

void BM_DetRun(benchmark::State& state) {
    const auto trace = random_trace(Model::lines, static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(run(Algorithm::det, trace, 0, {kDefaultItemCap, false}).total);
}
BENCHMARK(BM_DetRun)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_RandRun(benchmark::State& state, Model model) {
    const auto trace = random_trace(model, static_cast<std::size_t>(state.range(0)), 5);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run(Algorithm::rand, trace, seed++, {kDefaultItemCap, false}).total);
    state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_RandRun, cliques, Model::cliques)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK_CAPTURE(BM_RandRun, lines, Model::lines)->RangeMultiplier(4)->Range(16, 4096);

void BM_DpOpt(benchmark::State& state) {
    const auto trace = random_trace(Model::cliques, static_cast<std::size_t>(state.range(0)), 6);
    for (auto _ : state) benchmark::DoNotOptimize(dp_opt(trace).cost);
}
BENCHMARK(BM_DpOpt)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace

BENCHMARK_MAIN();
