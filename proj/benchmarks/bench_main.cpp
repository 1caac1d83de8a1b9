#include <benchmark/benchmark.h>

#include "voltroute/distributed_sim.hpp"
#include "voltroute/electric_router.hpp"
#include "voltroute/generators.hpp"
#include "voltroute/laplacian_solver.hpp"

namespace {

using namespace voltroute;

void BM_SeriesApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedGraph g = random_regular(n, 3, 1);
  const SeriesPlan plan = SeriesPlan::plain(g, 200);
  const VertexVector y = centered_indicator(n, 0);
  for (auto _ : state) benchmark::DoNotOptimize(series_apply(g, y, plan));
  state.SetItemsProcessed(state.iterations() * plan.k * g.num_edges());
}
BENCHMARK(BM_SeriesApply)->Arg(64)->Arg(256)->Arg(1024);

void BM_PinvOracle(benchmark::State& state) {
  const WeightedGraph g = random_regular(static_cast<int>(state.range(0)), 3, 2);
  for (auto _ : state) {
    PinvOracle oracle(g);
    benchmark::DoNotOptimize(oracle.matrix().data());
  }
}
BENCHMARK(BM_PinvOracle)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_CompetitiveBound(benchmark::State& state) {
  const ElectricRouter router(random_regular(static_cast<int>(state.range(0)), 3, 3));
  for (auto _ : state) benchmark::DoNotOptimize(router.competitive_bound());
}
BENCHMARK(BM_CompetitiveBound)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SimulateTables(benchmark::State& state) {
  const WeightedGraph g = random_regular(static_cast<int>(state.range(0)), 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_tables(g, 20).rows.data());
}
BENCHMARK(BM_SimulateTables)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_VertexExpansion(benchmark::State& state) {
  const WeightedGraph g = random_regular(static_cast<int>(state.range(0)), 3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(vertex_expansion_exact(g));
}
BENCHMARK(BM_VertexExpansion)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
