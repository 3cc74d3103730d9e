#include "spreadlab/boundsengine.hpp"
#include "spreadlab/macwlp.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_StatusRow(benchmark::State& state)
{
    const unsigned r = unsigned(state.range(0));
    for (auto _ : state) {
        macwlp::clear_caches();
        for (int n = 1; n <= 250; ++n) benchmark::DoNotOptimize(macwlp::existence_status(2, r, n).status);
    }
}
BENCHMARK(BM_StatusRow)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Lp52(benchmark::State& state)
{
    const auto p = macwlp::default_problem(2, 3, 52);
    for (auto _ : state) benchmark::DoNotOptimize(macwlp::lp_feasibility(p).feasible);
}
BENCHMARK(BM_Lp52)->Unit(benchmark::kMicrosecond);

void BM_BestBounds(benchmark::State& state)
{
    const auto q = std::uint64_t(state.range(0));
    const auto v = unsigned(state.range(1)), k = unsigned(state.range(2));
    for (auto _ : state) {
        macwlp::clear_caches();
        benchmark::DoNotOptimize(boundsengine::best_bounds(q, v, k).upper);
    }
}
BENCHMARK(BM_BestBounds)->Args({2, 11, 4})->Args({3, 8, 3})->Args({8, 14, 6})->Args({9, 18, 8})->Unit(
    benchmark::kMillisecond);

void BM_Tau(benchmark::State& state)
{
    const gfcore::BigInt delta = gfcore::ipow(gfcore::BigInt(2), 20);
    gfcore::BigInt n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(macwlp::tau_exclude(2, n, delta));
        n += 7919;
    }
}
BENCHMARK(BM_Tau);

}  // namespace
