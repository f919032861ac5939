#include <benchmark/benchmark.h>

#include "fracheat/solver.hpp"

using namespace fracheat;

static void BM_ApplyA(benchmark::State& state) {
  SolverConfig cfg;
  cfg.sigma = 0.375;
  cfg.h = {0.5, 1.0};
  cfg.medium = MediumParams::create(4.0, 1.0, 1.0, 2.0);
  const int n = state.range(0);
  cfg.time = TimeGrid(1.0, n);
  cfg.space = SpaceGrid(6.0, n + 1);
  cfg.noise.truncation = 8;
  cfg.noise.half_width = cfg.space.half_width();
  const auto ens = NoiseEnsemble::create(cfg.noise, cfg.time, 1);
  SolverWorkspace ws(cfg, ens);
  const auto u = random_smooth_field(cfg.time, cfg.space, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ws.apply_A(u));
}
BENCHMARK(BM_ApplyA)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
