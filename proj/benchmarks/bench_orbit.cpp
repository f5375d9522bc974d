#include <benchmark/benchmark.h>

#include <random>

#include "k3kit/orbit.hpp"

using namespace k3kit;

namespace {

// scramble the canonical root by random R1 reflections and transvections
LatticeVector random_root(const LatticePtr& lat, std::mt19937_64& rng, int moves) {
  auto us = lat->u_blocks();
  std::vector<Rat> c(lat->rank(), Rat(0));
  const auto& first_u = lat->summands()[us.front()];
  c[first_u.offset] = 1;
  c[first_u.offset + 1] = -1;
  LatticeVector v(lat, c);
  const auto& last_u = lat->summands()[us.back()];
  for (int i = 0; i < moves; ++i) {
    std::vector<Rat> mu(lat->rank(), Rat(0));
    for (int j = 0; j < lat->rank(); ++j) {
      if (j == last_u.offset || j == last_u.offset + 1) continue;
      mu[j] = static_cast<int>(rng() % 3) - 1;
    }
    LatticeVector m(lat, mu);
    std::vector<Rat> d(mu);
    d[last_u.offset] = 1;
    d[last_u.offset + 1] = (-norm_value(m) - 2) / 2;
    v = reflect(LatticeVector(lat, d), v);
  }
  return v;
}

}  // namespace

static void BM_CanonicalizeRoot(benchmark::State& state) {
  auto lat = Lattice::make("U^2+E8(-1)");
  std::mt19937_64 rng(17);
  std::vector<LatticeVector> roots;
  for (int i = 0; i < 64; ++i) roots.push_back(random_root(lat, rng, 6));
  size_t k = 0;
  for (auto _ : state) {
    auto cert = canonicalize_root(roots[k % roots.size()]);
    benchmark::DoNotOptimize(cert.steps);
    ++k;
  }
}
BENCHMARK(BM_CanonicalizeRoot);

static void BM_Gamma1Reduce(benchmark::State& state) {
  auto lat = Lattice::make("U^3+E8(-1)^2");
  std::mt19937_64 rng(23);
  std::vector<LatticeVector> roots;
  for (int i = 0; i < 32; ++i) roots.push_back(random_root(lat, rng, 8));
  size_t k = 0;
  for (auto _ : state) {
    auto cert = gamma1_reduce(roots[k % roots.size()]);
    benchmark::DoNotOptimize(cert.steps);
    ++k;
  }
}
BENCHMARK(BM_Gamma1Reduce);
