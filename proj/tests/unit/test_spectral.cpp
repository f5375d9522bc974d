#include <doctest.h>

#include <cmath>

#include "k3kit/counting.hpp"
#include "k3kit/error.hpp"
#include "k3kit/spectral.hpp"

using namespace k3kit;

TEST_CASE("eta q-series") {
  SUBCASE("eta(i) against the Gamma(1/4) closed form") {
    auto r = eta_value({{0.0, 1.0}}, 0, 1e-14);
    // eta(i) = Gamma(1/4) / (2 pi^{3/4}) = 0.768225422326056...
    CHECK(std::abs(r.value.real() - 0.768225422326056659) < 1e-12);
    CHECK(std::abs(r.value.imag()) < 1e-14);
    double e4 = std::pow(std::abs(r.value), 4.0);
    CHECK(std::abs(e4 - 0.3483009824214192) < 1e-10);
  }
  SUBCASE("|eta| is invariant under tau -> tau + 1") {
    auto a = eta_value({{0.3, 1.1}});
    auto b = eta_value({{1.3, 1.1}});
    CHECK(std::abs(std::abs(a.value) - std::abs(b.value)) < 1e-12);
  }
  SUBCASE("lower half plane rejected") {
    CHECK_THROWS_WITH_AS(eta_value({{0.0, -1.0}}), doctest::Contains("LowerHalfPlane"),
                         Error);
    CHECK_THROWS_WITH_AS(eta_value({{0.0, 0.0}}), doctest::Contains("LowerHalfPlane"), Error);
  }
  SUBCASE("tail bound is honest: N and 2N truncations differ less than it") {
    TorusModulus m{{0.2, 0.8}};
    auto a = eta_value(m, 20);
    auto b = eta_value(m, 40);
    CHECK(std::abs(a.value - b.value) <= 2 * a.tail_bound);
  }
}

TEST_CASE("expint E1 spot values") {
  CHECK(std::abs(expint_e1(0.1) - 1.8229239584193906159) < 1e-12);
  CHECK(std::abs(expint_e1(1.0) - 0.21938393439552027368) < 1e-12);
  CHECK(std::abs(expint_e1(5.0) - 0.0011482955912753257973) < 1e-14);
  CHECK(std::abs(expint_e1(15.0) - 1.9186278921478669771e-8) < 1e-20);
}

TEST_CASE("torus determinant matches (Im tau)^2 |eta|^4") {
  struct Case {
    double re, im, expect;
  };
  std::vector<Case> cases = {
      {0.0, 1.0, 0.3483009824214192},
      {0.0, 2.0, 0.4925719731282440},
      {0.5, 1.0, 0.3535435270027539},
      {1.0 / 3.0, 2.0, 0.4925822798926201},
  };
  for (const auto& c : cases) {
    CAPTURE(c.re);
    CAPTURE(c.im);
    auto rep = torus_det({{c.re, c.im}}, 1e-8);
    CHECK(rep.identity_residual < 1e-6);
    CHECK(std::abs(rep.det_value - c.expect) / c.expect < 1e-6);
    CHECK(rep.terms_used >= 1);
  }
}

TEST_CASE("torus determinant is invariant under tau -> tau + 1") {
  auto a = torus_det({{0.25, 1.3}}, 1e-9);
  auto b = torus_det({{1.25, 1.3}}, 1e-9);
  CHECK(std::abs(a.det_value - b.det_value) < 1e-10);
}

TEST_CASE("k3 determinant assembly") {
  SUBCASE("phi = 0 reduces to the Gram determinant") {
    Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(3, 19);
    tau(0, 0) = 0.25;
    tau(1, 3) = -0.1;
    auto pt = make_period_point(tau, 3, 19);
    auto zero = [](const PeriodPoint&) { return std::complex<double>(0, 0); };
    CHECK(k3_det_assembly(pt, zero) == gram_det(pt));
  }
  SUBCASE("base point with phi = 0 gives exactly 1") {
    auto pt = make_period_point(Eigen::MatrixXd::Zero(3, 19), 3, 19);
    auto zero = [](const PeriodPoint&) { return std::complex<double>(0, 0); };
    CHECK(k3_det_assembly(pt, zero) == 1.0);
  }
  SUBCASE("constant phi scales by |exp(phi)|^2") {
    auto pt = make_period_point(Eigen::MatrixXd::Zero(3, 19), 3, 19);
    auto phi = [](const PeriodPoint&) { return std::complex<double>(0.5, 1.25); };
    CHECK(k3_det_assembly(pt, phi) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  }
}

TEST_CASE("restriction consistency on a tube line") {
  // Phi from the U+E8(-1) profile vs the U+E8(-1)^2 profile restricted to
  // roots lying in the sublattice (second E8 coordinates constrained to 0):
  // the a_n agree, so the series evaluations agree at matched arguments.
  auto s1 = Lattice::make("U+E8(-1)");
  auto s2 = Lattice::make("U+E8(-1)^2");
  std::vector<Rat> l1c(s1->rank(), Rat(0));
  l1c[0] = 1; l1c[1] = 1;
  LatticeVector l1(s1, l1c);
  std::vector<Rat> l2c(s2->rank(), Rat(0));
  l2c[0] = 1; l2c[1] = 1;
  LatticeVector l2(s2, l2c);

  CountOptions opts;
  opts.strategy = CountStrategy::Theta;
  opts.collect_walls = false;
  auto p1 = count_roots_with_degree(s1, l1, 8, opts);

  // restricted counts on s2: roots with <delta, l> = n and zero pairing with
  // every basis vector of the second E8 block
  std::vector<Int> restricted;
  for (int n = 1; n <= 8; ++n) {
    RootConstraint c;
    c.pairings.push_back({l2, Int(n)});
    for (int i = 10; i < 18; ++i)
      c.pairings.push_back({LatticeVector::basis(s2, i), Int(0)});
    restricted.push_back(Int(enumerate_roots(s2, c).size()));
  }
  for (int n = 1; n <= 8; ++n) CHECK(p1.a[n - 1] == restricted[n - 1]);

  // evaluate both log-derivative series at q = e^{-2 pi t}: they agree to
  // floating accuracy because the coefficients agree exactly
  CountProfile p2 = p1;
  p2.a = restricted;
  auto s_a = log_derivative_series(p1);
  auto s_b = log_derivative_series(p2);
  for (double t : {0.5, 1.0, 2.0}) {
    double q = std::exp(-2.0 * 3.14159265358979323846 * t);
    double va = 0, vb = 0, qk = 1;
    for (int k = 1; k <= 8; ++k) {
      qk *= q;
      va += static_cast<double>(s_a.coeff(k)) * qk;
      vb += static_cast<double>(s_b.coeff(k)) * qk;
    }
    CHECK(std::abs(va - vb) <= 1e-9 * std::max(1.0, std::abs(va)));
  }
}
