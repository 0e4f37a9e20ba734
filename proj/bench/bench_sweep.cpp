// Serial reference loop vs OpenMP kernel on the same sweep grid.

#include <benchmark/benchmark.h>

#include "tpro/sweeps.hpp"

namespace {

tpro::SweepSpec spec(int n_area, int n_t0) {
  tpro::SweepSpec s;
  s.x = {tpro::AxisName::area_pi, 0.5, 12.0, n_area, tpro::AxisScale::linear};
  s.y = {tpro::AxisName::t0_ps, 0.3, 1.5, n_t0, tpro::AxisScale::linear};
  return s;
}

void BM_SweepSerial(benchmark::State& state) {
  const tpro::SweepSpec s = spec(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpro::run_sweep(s, tpro::ExecutionPolicy::serial));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}

void BM_SweepParallel(benchmark::State& state) {
  const tpro::SweepSpec s = spec(static_cast<int>(state.range(0)), 4);
  const int workers = tpro::default_worker_count();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpro::run_sweep(s, tpro::ExecutionPolicy::parallel, workers));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
  state.counters["workers"] = workers;
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
