#include "k3kit/spectral.hpp"

#include <cmath>

#include "k3kit/error.hpp"

namespace k3kit {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

double expint_e1(double x) {
  if (x <= 0) raise("DomainError", "E1 needs x > 0");
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    double sum = 0, term = 1;
    for (int k = 1; k <= 40; ++k) {
      term *= x / k;
      double add = term / k;
      sum += (k % 2 == 1) ? add : -add;
      if (add < 1e-18) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  // continued fraction (modified Lentz)
  double b = x + 1.0, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 200; ++i) {
    double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

EtaResult eta_value(const TorusModulus& m, int terms, double tol) {
  if (!(m.tau.imag() > 0)) raise("LowerHalfPlane", "Im tau must be positive");
  std::complex<double> q = std::exp(std::complex<double>(0, 2 * kPi) * m.tau);
  double aq = std::abs(q);
  int n_terms = terms;
  if (n_terms <= 0) {
    n_terms = 1;
    double p = aq;
    while (p >= tol && n_terms < 100000) { p *= aq; ++n_terms; }
  }
  std::complex<double> prod = 1.0;
  std::complex<double> qn = 1.0;
  for (int n = 1; n <= n_terms; ++n) {
    qn *= q;
    prod *= (1.0 - qn);
  }
  std::complex<double> prefactor = std::exp(std::complex<double>(0, 2 * kPi) * m.tau / 24.0);
  EtaResult out;
  out.value = prefactor * prod;
  out.terms = n_terms;
  // the omitted factors are within 2 |q|^{N+1} of 1 for |q| < 1/2
  out.tail_bound = 2.0 * std::abs(out.value) * std::pow(aq, n_terms + 1) / (1.0 - aq);
  return out;
}

DetReport torus_det(const TorusModulus& m, double precision, long long term_budget) {
  if (!(m.tau.imag() > 0)) raise("LowerHalfPlane", "Im tau must be positive");
  const double a = m.tau.real(), b = m.tau.imag();

  // zeta'(0) = -b/(4 pi) + R0 + T0 - gamma with
  //   R0 = (b/pi) sum_{w != 0} exp(-|w|^2/4) / |w|^2        (w in Z + tau Z)
  //   T0 = sum_{v != 0} E1(4 pi^2 |v|^2)                    (|v|^2 = |w|^2/b^2)
  // and det' = exp(-zeta'(0)).
  double log_tol = std::log(1.0 / precision) + 12.0;
  double r2_cut_r0 = 4.0 * log_tol;                    // exp(-r^2/4) regime
  double r2_cut_t0 = b * b * log_tol / (4 * kPi * kPi) + b * b;  // E1 regime
  double r2_cut = std::max(r2_cut_r0, r2_cut_t0);

  // |m1 + m2 tau|^2 = (m1 + m2 a)^2 + (m2 b)^2
  long long n_max = static_cast<long long>(std::sqrt(r2_cut) / b) + 2;
  double r0 = 0, t0 = 0;
  long long used = 0;
  for (long long m2 = -n_max; m2 <= n_max; ++m2) {
    double y = static_cast<double>(m2) * b;
    double span = r2_cut - y * y;
    if (span < 0) continue;
    double half = std::sqrt(span);
    long long lo = static_cast<long long>(std::floor(-m2 * a - half)) - 1;
    long long hi = static_cast<long long>(std::ceil(-m2 * a + half)) + 1;
    for (long long m1 = lo; m1 <= hi; ++m1) {
      if (m1 == 0 && m2 == 0) continue;
      double x = static_cast<double>(m1) + static_cast<double>(m2) * a;
      double w2 = x * x + y * y;
      if (w2 > r2_cut) continue;
      if (++used > term_budget)
        raise("PrecisionNotReached", "lattice-sum term budget exhausted");
      r0 += std::exp(-w2 / 4.0) / w2;
      double arg = 4.0 * kPi * kPi * w2 / (b * b);
      if (arg < log_tol + 40.0) t0 += expint_e1(arg);
    }
  }
  r0 *= b / kPi;
  double zeta_prime = -b / (4.0 * kPi) + r0 + t0 - kEulerGamma;

  DetReport rep;
  rep.det_value = std::exp(-zeta_prime);
  auto eta = eta_value(m, 0, std::min(precision * 1e-4, 1e-12));
  rep.eta = eta.value;
  double abs_eta = std::abs(eta.value);
  rep.closed_form = b * b * abs_eta * abs_eta * abs_eta * abs_eta;
  rep.identity_residual = std::abs(rep.det_value - rep.closed_form) / rep.closed_form;
  rep.terms_used = used;
  rep.target_precision = precision;
  return rep;
}

double k3_det_assembly(const PeriodPoint& pt,
                       const std::function<std::complex<double>(const PeriodPoint&)>& phi,
                       double constant) {
  if (!period_point_valid(pt)) raise("InvalidPeriodPoint", "plane is not positive");
  double g = gram_det(pt);
  std::complex<double> e = std::exp(phi(pt));
  double mag = std::abs(e);
  return constant * g * mag * mag;
}

}  // namespace k3kit
