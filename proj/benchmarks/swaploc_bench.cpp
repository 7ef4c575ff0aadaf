#include <benchmark/benchmark.h>

#include <map>

#include "swaploc/cells.hpp"
#include "swaploc/exact.hpp"
#include "swaploc/generators.hpp"
#include "swaploc/pmp.hpp"
#include "swaploc/swap.hpp"

namespace {

using namespace swaploc;

const Instance& grid(int width) {
  static std::map<int, Instance> cache;
  auto it = cache.find(width);
  if (it == cache.end()) {
    GridCityParams params;
    params.width = width;
    params.seed = 1;
    it = cache.emplace(width, generate_grid_city(params)).first;
  }
  return it->second;
}

void BM_SwapDelta(benchmark::State& state) {
  const Instance& instance = grid(static_cast<int>(state.range(0)));
  const Solution s(instance, density_init(instance, 10, 1));
  NodeId insert = 0;
  while (s.is_facility(insert)) ++insert;
  for (auto _ : state) benchmark::DoNotOptimize(swap_delta(instance, s, s.facilities()[0], insert));
}
BENCHMARK(BM_SwapDelta)->Arg(8)->Arg(16)->Arg(32);

void BM_BestSwap(benchmark::State& state) {
  const Instance& instance = grid(static_cast<int>(state.range(0)));
  const Solution s(instance, density_init(instance, 10, 1));
  for (auto _ : state) benchmark::DoNotOptimize(best_swap(instance, s));
}
BENCHMARK(BM_BestSwap)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolutionSwap(benchmark::State& state) {
  const Instance& instance = grid(16);
  Solution s(instance, density_init(instance, 10, 1));
  Rng rng(3);
  for (auto _ : state) {
    const NodeId remove = s.facilities()[uniform_index(rng, s.facilities().size())];
    NodeId insert;
    do {
      insert = static_cast<NodeId>(uniform_index(rng, instance.size()));
    } while (s.is_facility(insert));
    s.swap(instance, remove, insert);
  }
}
BENCHMARK(BM_SolutionSwap);

void BM_CellStats(benchmark::State& state) {
  const Instance& instance = grid(16);
  const Solution s(instance, density_init(instance, static_cast<int>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(cell_stats(instance, s));
}
BENCHMARK(BM_CellStats)->Arg(4)->Arg(16)->Arg(64);

void BM_ExactGrid8(benchmark::State& state) {
  const Instance& instance = grid(8);
  ExactOptions options;
  options.max_candidates = 100'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(exact_solve(instance, static_cast<int>(state.range(0)), options));
}
BENCHMARK(BM_ExactGrid8)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GenerateGrid(benchmark::State& state) {
  GridCityParams params;
  params.width = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_grid_city(params));
}
BENCHMARK(BM_GenerateGrid)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_GenerateGabriel(benchmark::State& state) {
  GabrielParams params;
  params.n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_gabriel(params));
}
BENCHMARK(BM_GenerateGabriel)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
