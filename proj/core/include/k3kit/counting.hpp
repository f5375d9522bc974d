#pragma once

#include <vector>

#include "k3kit/lattice.hpp"
#include "k3kit/series.hpp"

namespace k3kit {

// Root counts graded by polarization degree: a[n-1] = #{delta : <delta,delta>
// = -2, <delta,l> = n}; walls collect the roots orthogonal to l.
struct CountProfile {
  LatticePtr lattice;
  LatticeVector l;
  std::vector<Int> a;  // a_1 .. a_N
  std::vector<LatticeVector> walls;
};

// How per-norm counts of the definite fiber are obtained.
//   Enumeration  - bound-and-branch vector enumeration per block
//   Theta        - exact theta coefficients via the integer-coordinate coset
//                  model (E8) / direct square counts (<-2n>)
//   CrossChecked - Theta everywhere, verified against Enumeration on an
//                  overlap window of small norms
enum class CountStrategy { Enumeration, Theta, CrossChecked };

struct CountOptions {
  CountStrategy strategy = CountStrategy::CrossChecked;
  int threads = 0;
  std::int64_t enumeration_norm_budget = 64;  // overlap window for CrossChecked
  bool collect_walls = true;
};

CountProfile count_roots_with_degree(const LatticePtr& S, const LatticeVector& l,
                                     int max_degree, const CountOptions& opts = {});

// q^{weyl_exponent} * prod_n (1-q^n)^{a_n}, truncated at the profile length
// (or at `order` if non-negative)
PowerSeries product_expansion(const CountProfile& profile, const Rat& weyl_exponent,
                              int order = -1);

// Lambert-side series: coefficient of q^m is sum_{d | m} d * a_d
PowerSeries log_derivative_series(const CountProfile& profile, int order = -1);

// Roots with -bound <= <delta,v> <= 0: the walls and wall-violating roots
// seen from v, up to the stated pairing height.
std::vector<LatticeVector> chamber_walls(const LatticePtr& S, const LatticeVector& v,
                                         std::int64_t bound);

// Theta coefficients (positive-definite grading) of the negative-definite part
// of S, hist[m] = #{w : -<w,w> = m}. Exposed for tests and the CLI.
std::vector<Int> fiber_theta(const LatticePtr& S, std::int64_t max_norm,
                             CountStrategy strategy, int threads = 0);

// E8 theta coefficients through the D8 + spinor-coset integer model; exact.
std::vector<std::int64_t> theta_e8_coset(std::int64_t max_norm);

}  // namespace k3kit
