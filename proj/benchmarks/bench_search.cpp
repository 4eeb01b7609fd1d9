#include <csplab/generators.hpp>
#include <csplab/problem_io.hpp>
#include <csplab/search.hpp>

#include <benchmark/benchmark.h>

using namespace csplab;

namespace {

const char* const kTokens[] = {"bc/chrono", "bc/cbj", "mc:1/cbj", "mc:2/cbj", "gac/chrono", "gac/cbj"};

void BM_RandomFirstSolution(benchmark::State& state)
{
    const auto token = kTokens[state.range(0)];
    auto cfg = parse_algorithm_token(token);
    cfg.heuristic = HeuristicSpec::dom_div_deg();
    const auto p = gen_random({20, 6, 2, 40, 20, 1});
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        const auto r = solve(p, cfg);
        nodes = r.nodes;
        benchmark::DoNotOptimize(r.solutions);
    }
    state.SetLabel(token);
    state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_RandomFirstSolution)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_PigeonholeComposite(benchmark::State& state)
{
    const auto token = kTokens[state.range(0)];
    const auto inst = gen_pigeonhole(6, 2, PigeonholeVariant::A);
    auto cfg = parse_algorithm_token(token);
    cfg.heuristic = HeuristicSpec::given(inst.order);
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        const auto r = solve(inst.problem, cfg);
        nodes = r.nodes;
        benchmark::DoNotOptimize(r.solutions);
    }
    state.SetLabel(token);
    state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_PigeonholeComposite)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Crossword(benchmark::State& state)
{
    const auto grid = parse_grid(read_text_file(std::string(CSPLAB_DATA_DIR) + "/grids/puzzle-5x5.grid"));
    const auto dict = parse_dictionary(read_text_file(std::string(CSPLAB_DATA_DIR) + "/words-1k.txt"));
    const auto p = build_crossword(grid, dict.words);
    auto cfg = parse_algorithm_token(state.range(0) == 0 ? "gac/chrono" : "gac/cbj");
    cfg.heuristic = HeuristicSpec::dom_div_deg();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(p, cfg).nodes);
    }
}
BENCHMARK(BM_Crossword)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
