#include <benchmark/benchmark.h>

#include "k3kit/counting.hpp"
#include "k3kit/enumerate.hpp"

using namespace k3kit;

static void BM_E8Roots(benchmark::State& state) {
  auto e8 = Lattice::make("E8(-1)");
  for (auto _ : state) {
    auto roots = enumerate_roots(e8, RootConstraint{});
    benchmark::DoNotOptimize(roots.size());
  }
}
BENCHMARK(BM_E8Roots);

static void BM_E8HistogramEnumerated(benchmark::State& state) {
  auto e8 = Lattice::make("E8(-1)");
  std::vector<std::vector<std::int64_t>> g(8, std::vector<std::int64_t>(8));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g[i][j] = -e8->gram(i, j);
  const std::int64_t max_norm = state.range(0);
  for (auto _ : state) {
    auto hist = count_by_norm(g, max_norm);
    benchmark::DoNotOptimize(hist.back());
  }
  state.SetLabel("norm<=" + std::to_string(max_norm));
}
BENCHMARK(BM_E8HistogramEnumerated)->Arg(20)->Arg(40)->Arg(52);

static void BM_E8ThetaCoset(benchmark::State& state) {
  const std::int64_t max_norm = state.range(0);
  for (auto _ : state) {
    auto r = theta_e8_coset(max_norm);
    benchmark::DoNotOptimize(r.back());
  }
}
BENCHMARK(BM_E8ThetaCoset)->Arg(1000)->Arg(20002);

BENCHMARK_MAIN();
