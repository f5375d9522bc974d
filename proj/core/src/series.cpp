#include "k3kit/series.hpp"

#include <algorithm>
#include <cmath>

#include "k3kit/error.hpp"

namespace k3kit {

PowerSeries PowerSeries::one(int order) {
  if (order < 0) raise("NegativeTruncation", "order must be >= 0");
  std::vector<Rat> c(order + 1, Rat(0));
  c[0] = 1;
  return PowerSeries(Rat(0), std::move(c));
}

const Rat& PowerSeries::coeff(int k) const {
  static const Rat zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

PowerSeries PowerSeries::truncated(int order) const {
  if (order < 0) raise("NegativeTruncation", "order must be >= 0");
  std::vector<Rat> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), order + 1));
  c.resize(order + 1, Rat(0));
  return PowerSeries(offset_, std::move(c));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  if (offset_ != o.offset_) raise("OffsetMismatch", "series offsets differ");
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < c_.size()) c[i] += c_[i];
    if (i < o.c_.size()) c[i] += o.c_[i];
  }
  return PowerSeries(offset_, std::move(c));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
  if (offset_ != o.offset_) raise("OffsetMismatch", "series offsets differ");
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < c_.size()) c[i] += c_[i];
    if (i < o.c_.size()) c[i] -= o.c_[i];
  }
  return PowerSeries(offset_, std::move(c));
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  const int order = std::min(this->order(), o.order());
  std::vector<Rat> c(order + 1, Rat(0));
  for (int i = 0; i <= order; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (o.c_[j] == 0) continue;
      c[i + j] += c_[i] * o.c_[j];
    }
  }
  return PowerSeries(offset_ + o.offset_, std::move(c));
}

PowerSeries PowerSeries::times_binomial_factor(int n, const Int& exponent) const {
  if (n < 1) raise("NegativeTruncation", "factor exponent n must be >= 1");
  const int order = this->order();
  // (1 - q^n)^a = sum_k (-1)^k C(a,k) q^(nk)
  std::vector<Rat> factor;
  Int binom = 1;
  for (int k = 0; n * k <= order; ++k) {
    if (k > 0) {
      binom = binom * (exponent - (k - 1));
      binom = binom / k;
    }
    factor.push_back(k % 2 == 0 ? Rat(binom) : Rat(-binom));
  }
  std::vector<Rat> c(order + 1, Rat(0));
  for (int k = 0; k < static_cast<int>(factor.size()); ++k) {
    if (factor[k] == 0) continue;
    for (int i = 0; n * k + i <= order; ++i) {
      if (c_[i] == 0) continue;
      c[n * k + i] += factor[k] * c_[i];
    }
  }
  return PowerSeries(offset_, std::move(c));
}

PowerSeries PowerSeries::minus_q_dlog() const {
  if (c_.empty() || c_[0] != 1)
    raise("NotUnitSeries", "log-derivative needs unit constant coefficient");
  const int order = this->order();
  // h = -q f' (series part), then quot = h / f; the offset contributes the
  // constant -q d/dq log q^offset = -offset
  std::vector<Rat> h(order + 1, Rat(0));
  for (int m = 1; m <= order; ++m) h[m] = Rat(-m) * c_[m];
  std::vector<Rat> quot(order + 1, Rat(0));
  for (int m = 0; m <= order; ++m) {
    Rat acc = h[m];
    for (int k = 1; k <= m; ++k) acc -= c_[k] * quot[m - k];
    quot[m] = acc;
  }
  quot[0] = -offset_;
  return PowerSeries(Rat(0), std::move(quot));
}

bool PowerSeries::integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return is_integer(x); });
}

PowerSeries euler_product(int order) {
  if (order < 0) raise("NegativeTruncation", "order must be >= 0");
  PowerSeries p = PowerSeries::one(order);
  for (int n = 1; n <= order; ++n) p = p.times_binomial_factor(n, 1);
  return PowerSeries(Rat(1, 24), p.coeffs());
}

bool is_generalized_pentagonal(long long m) {
  if (m < 1) return false;
  // k(3k-1)/2 = m or k(3k+1)/2 = m
  for (long long sign : {-1, 1}) {
    // 3k^2 + sign*k - 2m = 0 -> k = (-sign + sqrt(1 + 24m)) / 6
    long long disc = 1 + 24 * m;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(disc)));
    while (r * r > disc) --r;
    while ((r + 1) * (r + 1) <= disc) ++r;
    if (r * r != disc) continue;
    long long num = -sign + r;
    if (num > 0 && num % 6 == 0) return true;
  }
  return false;
}

Int sigma1(long long m) {
  Int acc = 0;
  for (long long d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    acc += d;
    if (d != m / d) acc += m / d;
  }
  return acc;
}

}  // namespace k3kit
