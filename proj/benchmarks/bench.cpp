#include <benchmark/benchmark.h>

#include "outerlp/quasinorms.hpp"

using namespace outerlp;

namespace {

FiniteOuterSpace interval_space(int n) {
  // all dyadic intervals inside [0, n) as generators, sigma = length
  Generators g;
  for (int len = 1; len <= n; len *= 2)
    for (int lo = 0; lo + len <= n; lo += len)
      g.items.push_back({(full_mask(len)) << lo, double(len)});
  return build_space(std::vector<double>(n, 1.0), g);
}

PointFunction ramp(int n) {
  PointFunction f;
  f.values.resize(n);
  for (int i = 0; i < n; ++i) f.values[i] = double(i % 5) + 0.5;
  return f;
}

void BM_OuterMeasure(benchmark::State& state) {
  int n = int(state.range(0));
  auto s = interval_space(n);
  Mask a = full_mask(n) & 0x55555555u;  // every other point
  for (auto _ : state) benchmark::DoNotOptimize(s.outer_measure(a));
}

void BM_SuperLevelBruteForce(benchmark::State& state) {
  int n = int(state.range(0));
  auto s = interval_space(n);
  auto f = ramp(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        super_level_measure(s, f, 2.0, 1.5, SuperLevelStrategy::kBruteForce));
}

void BM_LpQuasinorm(benchmark::State& state) {
  int n = int(state.range(0));
  auto s = interval_space(n);
  auto f = ramp(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(lp_quasinorm(s, f, 2.0, 2.0, LayerCakeMode::kIntegral));
}

}  // namespace

BENCHMARK(BM_OuterMeasure)->Arg(8)->Arg(16);
BENCHMARK(BM_SuperLevelBruteForce)->Arg(8)->Arg(12);
BENCHMARK(BM_LpQuasinorm)->Arg(8)->Arg(12);
BENCHMARK_MAIN();
