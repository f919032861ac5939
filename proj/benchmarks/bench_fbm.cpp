#include <benchmark/benchmark.h>

#include "fracheat/fbm.hpp"
#include "fracheat/rng.hpp"

using namespace fracheat;

static void BM_SampleFbm(benchmark::State& state) {
  const TimeGrid tg(1.0, state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_fbm(HurstIndex(0.75), tg, derive_seed(1, seed++)));
}
BENCHMARK(BM_SampleFbm)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMicrosecond);

static void BM_HolderSeminorm(benchmark::State& state) {
  const TimeGrid tg(1.0, state.range(0));
  const auto path = sample_fbm(HurstIndex(0.75), tg, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(holder_seminorm(path.values, 0.375, tg, 1.0));
}
BENCHMARK(BM_HolderSeminorm)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMicrosecond);
