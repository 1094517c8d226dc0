#include <vector>

#include <benchmark/benchmark.h>

#include "turnarcs/diagnostics.hpp"
#include "turnarcs/gegenbauer.hpp"
#include "turnarcs/grid.hpp"
#include "turnarcs/simulator.hpp"

using namespace turnarcs;

static void BM_NormalizedGegenbauer(benchmark::State& state) {
  const auto degree = state.range(0);
  NormalizedGegenbauer g(0.5);
  std::vector<double> r(4096), out(4096), a(4096), b(4096);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -1.0 + 2.0 * (i + 0.5) / r.size();
  for (auto _ : state) {
    g.evaluate(degree, r, out, a, b);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(r.size()));
}
BENCHMARK(BM_NormalizedGegenbauer)->Arg(1)->Arg(16)->Arg(128)->Arg(1024);

static void BM_GegenbauerTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gegenbauer_eval_table(1.0, state.range(0), 0.3));
}
BENCHMARK(BM_GegenbauerTable)->Arg(64)->Arg(4096);

static void BM_SimulateLatLon(benchmark::State& state) {
  const Grid grid = build_grid(GridSpec::parse("latlon:200x200"));
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::negative_binomial(0.5)), DegreeDistribution::geometric(0.01),
                       state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, grid.points).values.data());
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(grid.points.size()));
}
BENCHMARK(BM_SimulateLatLon)->Arg(15)->Arg(150)->Unit(benchmark::kMillisecond);

static void BM_SimulateChentsovHighDimension(benchmark::State& state) {
  const Grid grid = build_grid(GridSpec::parse("section:" + std::to_string(state.range(0)) + ":100x100"));
  SimulationConfig cfg(CovarianceModel(CovarianceSpec::chentsov(static_cast<int>(state.range(0)))),
                       DegreeDistribution::odd_shifted_zeta(2.0), 150, 1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, grid.points).values.data());
}
BENCHMARK(BM_SimulateChentsovHighDimension)->Arg(4)->Arg(32)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Mu3Table(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mu3_gegenbauer_table(state.range(0), 3));
}
BENCHMARK(BM_Mu3Table)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
