#pragma once

#include <complex>
#include <functional>

#include "k3kit/period.hpp"

namespace k3kit {

struct TorusModulus {
  std::complex<double> tau;
};

struct EtaResult {
  std::complex<double> value;
  int terms = 0;
  double tail_bound = 0;  // magnitude bound on the truncation error
};

// q^{1/24} prod_{n<=N}(1-q^n), q = exp(2 pi i tau); N chosen from |q|^N < tol
// when terms <= 0.
EtaResult eta_value(const TorusModulus& m, int terms = 0, double tol = 1e-12);

struct DetReport {
  double det_value = 0;        // zeta-regularized det' of the flat Laplacian
  std::complex<double> eta;    // eta(tau) from the q-series route
  double closed_form = 0;      // (Im tau)^2 |eta|^4
  double identity_residual = 0;
  long long terms_used = 0;
  double target_precision = 0;
};

// det' Delta for the flat torus C/(Z + tau Z): spectral zeta via the
// heat-trace split, small-time part Poisson-transformed; fully independent of
// the eta route it is compared against.
DetReport torus_det(const TorusModulus& m, double precision = 1e-6,
                    long long term_budget = 1000000);

// det(<g_i,g_j>)(tau) * |exp(phi(tau))|^2 * constant
double k3_det_assembly(const PeriodPoint& pt,
                       const std::function<std::complex<double>(const PeriodPoint&)>& phi,
                       double constant = 1.0);

// exponential integral E1 (exposed for tests)
double expint_e1(double x);

}  // namespace k3kit
