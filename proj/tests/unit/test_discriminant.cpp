#include <doctest.h>

#include <random>

#include "k3kit/error.hpp"
#include "k3kit/orbit.hpp"

using namespace k3kit;

namespace {

LatticePtr k3() { return Lattice::make("U^3+E8(-1)^2"); }

LatticeVector polarization(const LatticePtr& lat, long long n) {
  std::vector<Rat> c(lat->rank(), Rat(0));
  c[0] = 1;
  c[1] = n;
  return LatticeVector(lat, c);
}

// Gamma_n-scramble: random reflections by roots orthogonal to l (either inside
// W, or of the kappa = k0 l* + mu_kappa shape)
LatticeVector scramble(const LatticePtr& lat, const LatticeVector& l, long long n,
                       LatticeVector v, std::mt19937_64& rng, int moves) {
  auto rand_small = [&](int lo, int hi) {
    return static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)) + lo;
  };
  for (int i = 0; i < moves;) {
    std::vector<Rat> c(lat->rank(), Rat(0));
    if (rng() % 2 == 0) {
      // root inside W: a (f1 - f2)-style or E8 root shifted into norm -2
      int pick = rand_small(0, 2);
      if (pick == 0) { c[2] = 1; c[3] = -1; }
      else if (pick == 1) { c[4] = 1; c[5] = -1; }
      else {
        c[6 + rand_small(0, 7)] = 1;  // simple root of the first E8
      }
    } else {
      // kappa = k0 l* + g1 + (n k0^2 - 1) g2
      long long k0 = rand_small(1, 2);
      c[0] = k0;
      c[1] = -k0 * n;
      c[4] = 1;
      c[5] = n * k0 * k0 - 1;
    }
    LatticeVector kappa(lat, c);
    if (norm_value(kappa) != -2) continue;
    if (pair_value(kappa, l) != 0) continue;
    LatticeVector next = reflect(kappa, v);
    bool small = true;
    for (int j = 0; j < lat->rank(); ++j)
      if (next[j] > 100000 || next[j] < -100000) small = false;
    if (!small) continue;
    v = next;
    ++i;
  }
  return v;
}

}  // namespace

TEST_CASE("perp-root branch") {
  auto lat = k3();
  SUBCASE("n = 1: delta = e1 - e2 is orthogonal to l = e1 + e2") {
    LatticeVector l = polarization(lat, 1);
    std::vector<Rat> c(lat->rank(), Rat(0));
    c[0] = 1; c[1] = -1;
    auto res = discriminant_component(LatticeVector(lat, c), l);
    CHECK(res.tag == "perp-root");
    CHECK(res.certificate.word.empty());
  }
  SUBCASE("E8 roots are orthogonal to every U-supported l") {
    LatticeVector l = polarization(lat, 3);
    std::vector<Rat> c(lat->rank(), Rat(0));
    c[6] = 1;
    auto res = discriminant_component(LatticeVector(lat, c), l);
    CHECK(res.tag == "perp-root");
  }
}

TEST_CASE("lstar-component: seeds and scrambles reduce to k l*") {
  auto lat = k3();
  for (long long n : {2LL, 3LL}) {
    CAPTURE(n);
    LatticeVector l = polarization(lat, n);
    // seed root in the first U pairing nontrivially with l: e1 - e2
    std::vector<Rat> c(lat->rank(), Rat(0));
    c[0] = 1; c[1] = -1;
    LatticeVector seed(lat, c);
    REQUIRE(norm_value(seed) == -2);
    REQUIRE(pair_value(seed, l) != 0);

    SUBCASE("seed itself") {
      auto res = discriminant_component(seed, l);
      CHECK(res.tag == "lstar-component");
      CHECK(certificate_replays(res.certificate));
    }
    SUBCASE("scrambled conjugates") {
      std::mt19937_64 rng(42 + n);
      for (int rep = 0; rep < 30; ++rep) {
        LatticeVector delta = scramble(lat, l, n, seed, rng, 4);
        REQUIRE(norm_value(delta) == -2);
        auto res = discriminant_component(delta, l, 20000);
        CHECK(res.tag == "lstar-component");
        CHECK(certificate_replays(res.certificate));
        // final projection is exactly k l*: output = m1 e1 + m2 e2 only
        const auto& out = res.certificate.output;
        for (int i = 2; i < lat->rank(); ++i) CHECK(out[i] == 0);
        // l-component unchanged: <delta, l> is Gamma_n-invariant
        CHECK(pair_value(out, l) == pair_value(delta, l));
        // projection coefficient: Pr(out) = beta l*
        Rat beta = out[0] / 2 - out[1] / (2 * Rat(n));
        CHECK(res.lstar_coefficient == beta);
      }
    }
  }
}

TEST_CASE("content-obstructed input reports BudgetExceeded") {
  auto lat = k3();
  LatticeVector l = polarization(lat, 2);
  // delta = e1 - e2 + f1: eta = 3 l* + 4 f1 has content 1 but needs content 3
  std::vector<Rat> c(lat->rank(), Rat(0));
  c[0] = 1; c[1] = -1; c[2] = 1;
  LatticeVector delta(lat, c);
  REQUIRE(norm_value(delta) == -2);
  REQUIRE(pair_value(delta, l) != 0);
  CHECK_THROWS_WITH_AS(discriminant_component(delta, l),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("bad polarization is rejected") {
  auto lat = k3();
  std::vector<Rat> c(lat->rank(), Rat(0));
  c[0] = 1; c[1] = -1;
  LatticeVector delta(lat, c);
  SUBCASE("l not in the first U") {
    std::vector<Rat> lc(lat->rank(), Rat(0));
    lc[2] = 1; lc[3] = 2;
    CHECK_THROWS_WITH_AS(discriminant_component(delta, LatticeVector(lat, lc)),
                         doctest::Contains("BadPolarization"), Error);
  }
  SUBCASE("l isotropic") {
    std::vector<Rat> lc(lat->rank(), Rat(0));
    lc[0] = 1;
    CHECK_THROWS_WITH_AS(discriminant_component(delta, LatticeVector(lat, lc)),
                         doctest::Contains("BadPolarization"), Error);
  }
  SUBCASE("delta not a root") {
    CHECK_THROWS_WITH_AS(discriminant_component(LatticeVector::basis(lat, 0),
                                                polarization(lat, 2)),
                         doctest::Contains("NotRoot"), Error);
  }
}
