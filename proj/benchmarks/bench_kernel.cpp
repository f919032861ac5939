#include <benchmark/benchmark.h>

#include "fracheat/kernel.hpp"

using namespace fracheat;

static void BM_KernelEval(benchmark::State& state) {
  const auto p = MediumParams::create(4.0, 1.0, 1.0, 2.0);
  double x = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(G_eval(0.37, x, 0.4, p));
    x += 1e-6;
  }
}
BENCHMARK(BM_KernelEval);

static void BM_KernelMass(benchmark::State& state) {
  const auto p = MediumParams::create(4.0, 1.0, 1.0, 2.0);
  const std::vector<double> probes = {0.0, 0.3, -0.5, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(mass_bound_check(0.1, probes, p));
}
BENCHMARK(BM_KernelMass)->Unit(benchmark::kMillisecond);
