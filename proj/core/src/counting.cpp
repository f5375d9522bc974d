#include "k3kit/counting.hpp"

#include <algorithm>
#include <cmath>

#include "k3kit/enumerate.hpp"
#include "k3kit/error.hpp"

namespace k3kit {

namespace {

// multiply dense int64 series (length cap) by the sparse 1-d theta
// sum_k mult(k) u^{exp(k)}; used to build 8th powers of Jacobi-type series
void sparse_multiply(std::vector<std::int64_t>& dense,
                     const std::vector<std::pair<std::int64_t, std::int64_t>>& sparse) {
  const auto n = static_cast<std::int64_t>(dense.size());
  std::vector<std::int64_t> out(dense.size(), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    if (dense[i] == 0) continue;
    for (const auto& [e, m] : sparse) {
      if (i + e >= n) break;
      out[i + e] += dense[i] * m;
    }
  }
  dense.swap(out);
}

std::vector<std::int64_t> onedim_power8(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& sparse, std::int64_t len) {
  std::vector<std::int64_t> acc(len, 0);
  acc[0] = 1;
  for (int k = 0; k < 8; ++k) sparse_multiply(acc, sparse);
  return acc;
}

}  // namespace

std::vector<std::int64_t> theta_e8_coset(std::int64_t max_norm) {
  if (max_norm < 0) max_norm = 0;
  const std::int64_t len = max_norm + 1;

  // integer coordinates: theta3^8 and theta4^8 on the q-grid
  std::vector<std::pair<std::int64_t, std::int64_t>> t3, t4;
  t3.push_back({0, 1});
  t4.push_back({0, 1});
  for (std::int64_t k = 1; k * k <= max_norm; ++k) {
    t3.push_back({k * k, 2});
    t4.push_back({k * k, k % 2 == 0 ? 2 : -2});
  }
  auto z8 = onedim_power8(t3, len);
  auto z8s = onedim_power8(t4, len);

  // spinor coset: exponents (2j+1)^2 on the u = q^{1/4} grid
  const std::int64_t ulen = 4 * max_norm + 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> todd;
  for (std::int64_t j = 0; (2 * j + 1) * (2 * j + 1) <= 4 * max_norm; ++j)
    todd.push_back({(2 * j + 1) * (2 * j + 1), 2});
  auto half = onedim_power8(todd, ulen);

  std::vector<std::int64_t> r(len, 0);
  for (std::int64_t m = 0; m <= max_norm; ++m) {
    std::int64_t a = z8[m] + z8s[m];  // 2 * (even-sum integer vectors)
    std::int64_t b = half[4 * m];     // all half-integer vectors; half have even sum
    r[m] = a / 2 + b / 2;
  }
  return r;
}

namespace {

std::vector<Int> theta_block(const Summand& sm, const LatticePtr& lat,
                             std::int64_t max_norm, CountStrategy strategy, int threads) {
  std::vector<Int> hist(max_norm + 1, Int(0));
  switch (sm.kind) {
    case SummandKind::U:
      raise("NotHyperbolic", "fiber theta is defined for definite blocks only");
    case SummandKind::TwoN: {
      // <-2n>: vector k has positive norm 2 n k^2
      for (std::int64_t k = 0;; ++k) {
        std::int64_t m = 2 * sm.n * k * k;
        if (m > max_norm) break;
        hist[m] += (k == 0 ? 1 : 2);
      }
      return hist;
    }
    case SummandKind::E8Neg: {
      if (strategy == CountStrategy::Theta) {
        auto r = theta_e8_coset(max_norm);
        for (std::int64_t m = 0; m <= max_norm; ++m) hist[m] = r[m];
        return hist;
      }
      std::vector<std::vector<std::int64_t>> g(8, std::vector<std::int64_t>(8));
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) g[i][j] = -lat->gram(sm.offset + i, sm.offset + j);
      auto counts = count_by_norm(g, max_norm, threads);
      for (std::int64_t m = 0; m <= max_norm; ++m) hist[m] = counts[m];
      return hist;
    }
  }
  raise("InternalError", "unreachable");
}

std::vector<Int> convolve(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out(std::min(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < out.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < out.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

std::vector<Int> fiber_theta(const LatticePtr& S, std::int64_t max_norm,
                             CountStrategy strategy, int threads) {
  std::vector<Int> acc(max_norm + 1, Int(0));
  acc[0] = 1;
  for (const auto& sm : S->summands()) {
    if (sm.kind == SummandKind::U) continue;
    if (strategy == CountStrategy::CrossChecked) {
      auto t = theta_block(sm, S, max_norm, CountStrategy::Theta, threads);
      std::int64_t overlap = std::min<std::int64_t>(max_norm, 64);
      auto e = theta_block(sm, S, overlap, CountStrategy::Enumeration, threads);
      for (std::int64_t m = 0; m <= overlap; ++m)
        if (t[m] != e[m])
          raise("InternalError", "theta/enumeration cross-check failed at norm " +
                                     std::to_string(m));
      acc = convolve(acc, t);
    } else {
      acc = convolve(acc, theta_block(sm, S, max_norm, strategy, threads));
    }
  }
  return acc;
}

namespace {

struct HyperbolicSplit {
  int u_block;       // the unique U summand
  Int alpha, beta;   // l = alpha e1 + beta e2 in that block
};

HyperbolicSplit check_profile_inputs(const LatticePtr& S, const LatticeVector& l) {
  auto sig = S->signature();
  if (sig.first != 1)
    raise("NotHyperbolic", "counting needs signature (1,k), got (" +
                               std::to_string(sig.first) + "," + std::to_string(sig.second) + ")");
  if (!l.integral()) raise("NotPolarization", "l must be integral");
  Rat nn = norm_value(l);
  if (nn <= 0) raise("NotPolarization", "need <l,l> > 0, got " + rat_to_string(nn));
  auto us = S->u_blocks();
  HyperbolicSplit hs{us.empty() ? -1 : us.front(), 0, 0};
  if (hs.u_block >= 0) {
    const auto& sm = S->summands()[hs.u_block];
    bool supported = true;
    for (int i = 0; i < S->rank(); ++i) {
      bool in_u = i >= sm.offset && i < sm.offset + 2;
      if (!in_u && l[i] != 0) { supported = false; break; }
    }
    if (supported) {
      hs.alpha = rat_num(l[sm.offset]);
      hs.beta = rat_num(l[sm.offset + 1]);
      return hs;
    }
  }
  hs.u_block = -1;  // general-position l: per-degree fiber enumeration
  return hs;
}

}  // namespace

CountProfile count_roots_with_degree(const LatticePtr& S, const LatticeVector& l,
                                     int max_degree, const CountOptions& opts) {
  if (max_degree < 1) raise("NegativeTruncation", "max degree must be >= 1");
  auto hs = check_profile_inputs(S, l);

  CountProfile out;
  out.lattice = S;
  out.l = l;
  out.a.assign(max_degree, Int(0));

  if (opts.collect_walls) {
    RootConstraint wall_c;
    wall_c.norm = -2;
    wall_c.pairings.push_back({l, Int(0)});
    out.walls = enumerate_roots(S, wall_c, opts.threads);
  }

  if (hs.u_block < 0) {
    // general support: solve <delta,l> = n per degree (exact, small N only)
    for (int n = 1; n <= max_degree; ++n) {
      RootConstraint c;
      c.norm = -2;
      c.pairings.push_back({l, Int(n)});
      out.a[n - 1] = Int(enumerate_roots(S, c, opts.threads).size());
    }
    return out;
  }

  // l = alpha e1 + beta e2: delta = a e1 + b e2 + w pairs to a*beta + b*alpha,
  // norm -2 forces the fiber norm -<w,w> = 2 + 2ab >= 0
  const Int alpha = hs.alpha, beta = hs.beta;
  std::int64_t max_fiber_norm = 0;
  std::vector<std::vector<std::pair<Int, Int>>> ab_pairs(max_degree + 1);
  for (int n = 1; n <= max_degree; ++n) {
    // solve a*beta + b*alpha = n over Z
    std::vector<Int> coeff;
    Int g = ext_gcd_vector({beta, alpha}, coeff);
    if (g == 0 || Int(n) % g != 0) continue;
    Int a0 = coeff[0] * (Int(n) / g), b0 = coeff[1] * (Int(n) / g);
    Int da = alpha / g, db = -(beta / g);  // direction: (a,b) += t (da, db)
    // <l,l> > 0 forces alpha*beta != 0, so ab(t) is a downward parabola in t;
    // walk outward from the vertex while ab >= -1
    Rat tv = Rat(-(a0 * db + b0 * da), 2 * da * db);
    Int t0 = rat_floor(tv);
    for (int dir = 0; dir < 2; ++dir) {
      Int t = dir == 0 ? t0 : t0 + 1;
      while (true) {
        Int a = a0 + t * da, b = b0 + t * db;
        Int ab = a * b;
        if (ab < -1) break;
        ab_pairs[n].push_back({a, b});
        auto fib = to_int64(2 + 2 * ab);
        if (!fib) raise("Overflow", "fiber norm out of range");
        max_fiber_norm = std::max(max_fiber_norm, *fib);
        t += dir == 0 ? -1 : 1;
      }
    }
  }

  auto theta = fiber_theta(S, max_fiber_norm, opts.strategy, opts.threads);
  for (int n = 1; n <= max_degree; ++n) {
    Int acc = 0;
    for (const auto& [a, b] : ab_pairs[n]) {
      Int m = 2 + 2 * a * b;
      acc += theta[static_cast<size_t>(*to_int64(m))];
    }
    out.a[n - 1] = acc;
  }
  return out;
}

PowerSeries product_expansion(const CountProfile& profile, const Rat& weyl_exponent,
                              int order) {
  int n_max = order >= 0 ? order : static_cast<int>(profile.a.size());
  if (order >= 0 && order > static_cast<int>(profile.a.size()))
    raise("NegativeTruncation", "profile holds fewer degrees than requested order");
  PowerSeries p = PowerSeries::one(n_max);
  for (int n = 1; n <= n_max && n <= static_cast<int>(profile.a.size()); ++n) {
    if (profile.a[n - 1] == 0) continue;
    p = p.times_binomial_factor(n, profile.a[n - 1]);
  }
  return PowerSeries(weyl_exponent, p.coeffs());
}

PowerSeries log_derivative_series(const CountProfile& profile, int order) {
  int n_max = order >= 0 ? order : static_cast<int>(profile.a.size());
  std::vector<Rat> c(n_max + 1, Rat(0));
  for (int m = 1; m <= n_max; ++m) {
    Int acc = 0;
    for (int d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      if (d <= static_cast<int>(profile.a.size())) acc += Int(d) * profile.a[d - 1];
    }
    c[m] = Rat(acc);
  }
  return PowerSeries(Rat(0), std::move(c));
}

std::vector<LatticeVector> chamber_walls(const LatticePtr& S, const LatticeVector& v,
                                         std::int64_t bound) {
  if (!v.integral()) raise("NotPositiveNorm", "v must be integral");
  Rat nn = norm_value(v);
  if (nn <= 0) raise("NotPositiveNorm", "need <v,v> > 0, got " + rat_to_string(nn));
  if (bound < 0) bound = 0;
  std::vector<LatticeVector> out;
  for (std::int64_t h = 0; h <= bound; ++h) {
    RootConstraint c;
    c.norm = -2;
    c.pairings.push_back({v, Int(-h)});
    auto found = enumerate_roots(S, c);
    out.insert(out.end(), found.begin(), found.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace k3kit
