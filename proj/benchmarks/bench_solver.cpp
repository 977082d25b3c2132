#include <benchmark/benchmark.h>

#include "multiamdahl/solver.hpp"
#include "multiamdahl/sweep.hpp"

using namespace multiamdahl;

namespace {

double p_of(const Scenario& s, double frac) {
  return SystemPowerSpec::fraction(frac).resolve(s.reference_power());
}

void BM_DelayMultiAccel(benchmark::State& state) {
  const Scenario s = preset_multi_accelerator();
  for (auto _ : state) benchmark::DoNotOptimize(solve_delay(s));
}
BENCHMARK(BM_DelayMultiAccel);

void BM_EnergyHpc(benchmark::State& state) {
  const Scenario s = preset_hpc(0.5);
  const double p = p_of(s, state.range(0) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_energy(s, p));
}
BENCHMARK(BM_EnergyHpc)->Arg(2)->Arg(40)->Arg(95);

void BM_EnergyMultiAccel(benchmark::State& state) {
  const Scenario s = preset_multi_accelerator();
  const double p = p_of(s, state.range(0) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_energy(s, p));
}
BENCHMARK(BM_EnergyMultiAccel)->Arg(2)->Arg(40)->Arg(95)->Unit(benchmark::kMillisecond);

void BM_SweepHpc(benchmark::State& state) {
  const Scenario s = preset_hpc(0.5);
  const auto grid = default_s_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_psys(s, grid));
}
BENCHMARK(BM_SweepHpc)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const Scenario s = preset_multi_accelerator();
  const auto spec = ObjectiveSpec::energy(p_of(s, 0.1));
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_oracle(s, spec, step));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(simplex_grid_size(5, state.range(0))));
}
BENCHMARK(BM_Oracle)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
