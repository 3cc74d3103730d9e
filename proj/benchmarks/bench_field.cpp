#include "spreadlab/divset.hpp"
#include "spreadlab/spreadlab.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_FieldMul(benchmark::State& state)
{
    const auto f = gfcore::field_new(std::uint64_t(state.range(0)));
    const auto q = gfcore::Elem(f->q());
    gfcore::Elem acc = 1;
    for (auto _ : state) {
        for (gfcore::Elem a = 1; a < q; ++a) acc = f->add(f->mul(acc, a), 1);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * (q - 1));
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(256)->Arg(65536);

void BM_Multicomponent(benchmark::State& state)
{
    const unsigned v = unsigned(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spreadlab::multicomponent(2, v, 3).size());
}
BENCHMARK(BM_Multicomponent)->Arg(8)->Arg(11)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_Holes(benchmark::State& state)
{
    const auto s = spreadlab::multicomponent(2, unsigned(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(spreadlab::holes(s).cardinality());
}
BENCHMARK(BM_Holes)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state)
{
    const auto c = divset::construction1(2, 2, std::uint64_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(divset::spectrum(c.set).n);
}
BENCHMARK(BM_Spectrum)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
