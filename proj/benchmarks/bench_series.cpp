#include <benchmark/benchmark.h>

#include "k3kit/counting.hpp"
#include "k3kit/series.hpp"

using namespace k3kit;

static void BM_EulerProduct(benchmark::State& state) {
  const int order = state.range(0);
  for (auto _ : state) {
    auto p = euler_product(order);
    benchmark::DoNotOptimize(p.coeff(order));
  }
}
BENCHMARK(BM_EulerProduct)->Arg(200)->Arg(500);

static void BM_CountingIdentity(benchmark::State& state) {
  auto lat = Lattice::make("U+E8(-1)");
  std::vector<Rat> lc(10, Rat(0));
  lc[0] = 1; lc[1] = 1;
  LatticeVector l(lat, lc);
  CountOptions opts;
  opts.strategy = CountStrategy::Theta;
  opts.collect_walls = false;
  const int order = state.range(0);
  auto profile = count_roots_with_degree(lat, l, order, opts);
  for (auto _ : state) {
    auto prod = product_expansion(profile, Rat(0));
    auto lhs = prod.minus_q_dlog();
    benchmark::DoNotOptimize(lhs.coeff(order));
  }
}
BENCHMARK(BM_CountingIdentity)->Arg(50)->Arg(200);
