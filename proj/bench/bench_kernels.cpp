// Serial reference kernels against their OpenMP counterparts on a planted
// partition graph. Run with --benchmark_filter to pick one family.
#include <benchmark/benchmark.h>

#include "conclude/distance.hpp"
#include "conclude/evaluation.hpp"
#include "conclude/kpath.hpp"

using namespace conclude;

namespace {

const Graph& bench_graph() {
  static const Graph g = planted_partition({5000, 4, 16.0 / 1249.0, 4.0 / 3750.0, 1}).graph;
  return g;
}

const EdgeCentralities& bench_centralities() {
  static const EdgeCentralities c = erw_kpath(bench_graph(), {20, 10 * bench_graph().edge_count(), 1});
  return c;
}

KpathParams walk_params() { return {20, 20 * bench_graph().edge_count(), 7}; }

void BM_ErwKpathSerial(benchmark::State& state) {
  const auto& g = bench_graph();
  for (auto _ : state) benchmark::DoNotOptimize(erw_kpath_serial(g, walk_params()));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * walk_params().rho));
}

void BM_ErwKpathParallel(benchmark::State& state) {
  const auto& g = bench_graph();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(erw_kpath(g, walk_params(), workers));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * walk_params().rho));
}

void BM_EdgeDistancesSerial(benchmark::State& state) {
  const auto& g = bench_graph();
  const auto& c = bench_centralities();
  for (auto _ : state) benchmark::DoNotOptimize(edge_distances_serial(g, c));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.edge_count()));
}

void BM_EdgeDistancesParallel(benchmark::State& state) {
  const auto& g = bench_graph();
  const auto& c = bench_centralities();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(edge_distances(g, c, workers));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.edge_count()));
}

}  // namespace

BENCHMARK(BM_ErwKpathSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErwKpathParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EdgeDistancesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgeDistancesParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
