#pragma once

#include <vector>

#include "k3kit/numeric.hpp"

namespace k3kit {

// Truncated formal series sum_k c[k] q^(offset + k) with exact rational
// coefficients and a rational leading-exponent offset. All arithmetic is
// exact and closed at the stated truncation order.
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(Rat offset, std::vector<Rat> coeffs)
      : offset_(std::move(offset)), c_(std::move(coeffs)) {}

  static PowerSeries one(int order);

  const Rat& offset() const { return offset_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& coeff(int k) const;  // coefficient of q^(offset + k)

  PowerSeries truncated(int order) const;
  PowerSeries operator+(const PowerSeries& o) const;  // requires equal offsets
  PowerSeries operator-(const PowerSeries& o) const;
  PowerSeries operator*(const PowerSeries& o) const;

  // (1 - q^n)^a folded in, truncating at this->order()
  PowerSeries times_binomial_factor(int n, const Int& exponent) const;

  // -q d/dq log(f) for f with unit constant coefficient and offset w:
  // returns -w + series part; the pure series part has zero constant term.
  PowerSeries minus_q_dlog() const;

  bool integral() const;

 private:
  Rat offset_ = 0;
  std::vector<Rat> c_;
};

// prod_{n=1}^{N} (1 - q^n) truncated at order N, offset 1/24 recorded
PowerSeries euler_product(int order);

// is m = k(3k +- 1)/2 for some k >= 1?
bool is_generalized_pentagonal(long long m);

// sum of divisors of m (oracle-grade, trial division)
Int sigma1(long long m);

}  // namespace k3kit
