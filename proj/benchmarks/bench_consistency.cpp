#include <csplab/domain_state.hpp>
#include <csplab/gac.hpp>
#include <csplab/generators.hpp>
#include <csplab/strong_k.hpp>

#include <benchmark/benchmark.h>

using namespace csplab;

namespace {

void BM_EnforceGac(benchmark::State& state)
{
    const auto p = gen_random({50, 10, 2, 95, static_cast<std::uint64_t>(state.range(0)), 3});
    for (auto _ : state) {
        DomainState ds(p);
        benchmark::DoNotOptimize(enforce_gac(p, ds, false).removals.size());
    }
}
BENCHMARK(BM_EnforceGac)->Arg(40)->Arg(60)->Arg(80);

void BM_EnforceStrongK(benchmark::State& state)
{
    const auto p = gen_random({10, 4, 2, 20, 9, 5});
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enforce_strong_k(p, k).empty);
    }
}
BENCHMARK(BM_EnforceStrongK)->DenseRange(1, 3);

} // namespace
