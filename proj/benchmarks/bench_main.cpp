#include "flatpack/builders.hpp"
#include "flatpack/fixtures.hpp"
#include "flatpack/packing.hpp"
#include "flatpack/trigen.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace flatpack;

static void BM_VerifyChain(benchmark::State& state) {
  auto c = chain_configuration(make_chain_packing(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(verify_configuration(c, 6));
}
BENCHMARK(BM_VerifyChain)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_VerifyFigures(benchmark::State& state) {
  std::vector<Configuration> configs;
  for (auto id : all_figures()) configs.push_back(make_figure(id).configuration);
  for (auto _ : state)
    for (const auto& c : configs) benchmark::DoNotOptimize(verify_configuration(c, 6));
}
BENCHMARK(BM_VerifyFigures)->Unit(benchmark::kMillisecond);

static void BM_ContactsGraph(benchmark::State& state) {
  auto c = chain_configuration(make_chain_packing(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(contacts_graph(c, 6));
}
BENCHMARK(BM_ContactsGraph)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_UnfoldDistance(benchmark::State& state) {
  auto t = make_torus();
  int depth = static_cast<int>(state.range(0));
  QPoint p{Rat(1, 7), Rat(2, 9)}, q{Rat(5, 6), Rat(8, 11)};
  for (auto _ : state) benchmark::DoNotOptimize(unfold_distance(t, {0, p}, {0, q}, depth));
}
BENCHMARK(BM_UnfoldDistance)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

static void BM_DecomposeRandom(benchmark::State& state) {
  std::mt19937_64 rng(42);
  std::vector<CombinatorialMap> maps;
  for (int i = 0; i < 32; ++i) maps.push_back(make_chain_triangulation(random_chain_spec(rng), rng()).map);
  for (auto _ : state)
    for (const auto& m : maps) benchmark::DoNotOptimize(decompose(m));
}
BENCHMARK(BM_DecomposeRandom)->Unit(benchmark::kMillisecond);

static void BM_CutAlongCycles(benchmark::State& state) {
  auto maps = all_rooted_maps(static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto& m : maps)
      for (const auto& loop : simple_cycles(m, 2 * static_cast<int>(state.range(0))))
        benchmark::DoNotOptimize(summarize(cut_along_cycle(m, loop)));
}
BENCHMARK(BM_CutAlongCycles)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
