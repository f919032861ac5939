#include <benchmark/benchmark.h>

#include <cmath>

#include "fracheat/fraccalc.hpp"

using namespace fracheat;

namespace {
GridFunction sampled(int n, double (*f)(double)) {
  GridFunction g{0.0, 1.0, std::vector<double>(n)};
  for (int i = 0; i < n; ++i) g.values[i] = f(g.node(i));
  return g;
}
}  // namespace

static void BM_GlsRuleBuild(benchmark::State& state) {
  const int n = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(GlsProductRule(0.0, 1.0, n, 0.375, 2));
}
BENCHMARK(BM_GlsRuleBuild)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMicrosecond);

static void BM_GlsIntegrate(benchmark::State& state) {
  const int n = state.range(0);
  const auto phi = sampled(n, [](double x) { return std::exp(-x); });
  const auto psi = sampled(n, [](double x) { return std::sin(3.0 * x) + x; });
  GlsProductRule rule(0.0, 1.0, n, 0.375, 2);
  const auto right = rule.right_deriv_at_abscissas(psi.values);
  for (auto _ : state)
    benchmark::DoNotOptimize(rule.integrate(phi.values, right));
}
BENCHMARK(BM_GlsIntegrate)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMicrosecond);
