#include <array>

#include <benchmark/benchmark.h>

#include "magnon/sweep.hpp"

namespace {

using namespace magnon;

void BM_SolveLyapunov(benchmark::State& state) {
  const SystemConfig c = baseline_config(DriveConfiguration::double_squeezed);
  const DriftMatrix a = build_drift(c);
  const DiffusionMatrix d = build_diffusion(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_steady_state(a, d));
  }
}
BENCHMARK(BM_SolveLyapunov);

void BM_LogNegativity(benchmark::State& state) {
  const SystemConfig c = baseline_config(DriveConfiguration::double_squeezed);
  const TwoModeCovariance m = extract_magnon_block(solve_steady_state(build_drift(c), build_diffusion(c)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_negativity(m));
  }
}
BENCHMARK(BM_LogNegativity);

// One full grid point: model assembly, stability check, solve, negativity.
void BM_AnalyzePoint(benchmark::State& state) {
  const SystemConfig c = baseline_config(DriveConfiguration::double_squeezed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(c));
  }
}
BENCHMARK(BM_AnalyzePoint);

void BM_DetuningSweep(benchmark::State& state) {
  const SystemConfig base = baseline_config(DriveConfiguration::double_squeezed);
  const int n = static_cast<int>(state.range(0));
  const std::array axes{SweepAxis{Parameter::cavity1_detuning, -2 * base.J, 2 * base.J, n},
                        SweepAxis{Parameter::cavity2_detuning, -2 * base.J, 2 * base.J, n}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(base, axes, {static_cast<unsigned>(state.range(1))}));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_DetuningSweep)->Args({21, 1})->Args({21, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
