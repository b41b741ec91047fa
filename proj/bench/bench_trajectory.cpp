// Serial reference versus OpenMP runners.

#include <benchmark/benchmark.h>

#include "dirac_noise/scenario.hpp"

namespace {

namespace dn = dirac_noise;

dn::ScenarioConfig reference_config() {
  dn::ScenarioConfig c;
  c.initial_state = "a";
  c.t_max = 20.0;
  c.dt = 0.01;
  return c;
}

const std::vector<double> kGrid = {0.0, 0.5, 1.0, 10.0};

void BM_TrajectorySerial(benchmark::State& state) {
  const auto config = reference_config();
  for (auto _ : state) benchmark::DoNotOptimize(dn::run_trajectory_serial(config));
}

void BM_TrajectoryParallel(benchmark::State& state) {
  const auto config = reference_config();
  for (auto _ : state) benchmark::DoNotOptimize(dn::run_trajectory(config));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto config = reference_config();
  for (auto _ : state) benchmark::DoNotOptimize(dn::run_sweep(config, kGrid, false));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto config = reference_config();
  for (auto _ : state) benchmark::DoNotOptimize(dn::run_sweep(config, kGrid, true));
}

}  // namespace

BENCHMARK(BM_TrajectorySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrajectoryParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
