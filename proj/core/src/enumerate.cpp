#include "k3kit/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "k3kit/error.hpp"

namespace k3kit {

namespace {

// A = L D L^T with unit lower-triangular L; returns false if a pivot is
// non-positive (form not positive definite to double accuracy).
bool ldlt(const std::vector<std::vector<double>>& a, std::vector<double>& d,
          std::vector<std::vector<double>>& l) {
  const int n = static_cast<int>(a.size());
  d.assign(n, 0.0);
  l.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) l[i][i] = 1.0;
  for (int i = 0; i < n; ++i) {
    double di = a[i][i];
    for (int k = 0; k < i; ++k) di -= d[k] * l[i][k] * l[i][k];
    if (di <= 0) return false;
    d[i] = di;
    for (int j = i + 1; j < n; ++j) {
      double v = a[i][j];
      for (int k = 0; k < i; ++k) v -= d[k] * l[j][k] * l[i][k];
      l[j][i] = v / di;
    }
  }
  return true;
}

struct DefiniteForm {
  int n;
  std::vector<std::vector<std::int64_t>> gram;
  std::vector<double> d;                  // LDL^T pivots
  std::vector<std::vector<double>> u;     // u[i][j] = L[j][i] for j > i
  static DefiniteForm build(const std::vector<std::vector<std::int64_t>>& g) {
    DefiniteForm f;
    f.n = static_cast<int>(g.size());
    f.gram = g;
    std::vector<std::vector<double>> a(f.n, std::vector<double>(f.n));
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j) a[i][j] = static_cast<double>(g[i][j]);
    std::vector<std::vector<double>> l;
    if (!ldlt(a, f.d, l))
      raise("NotPositiveDefinite", "enumeration kernel needs a definite form");
    f.u.assign(f.n, std::vector<double>(f.n, 0.0));
    for (int i = 0; i < f.n; ++i)
      for (int j = i + 1; j < f.n; ++j) f.u[i][j] = l[j][i];
    return f;
  }
};

constexpr double kPad = 1e-7;

// Depth-first search over coordinates n-1 .. 0. Float bounds prune; the exact
// int64 tail norm decides membership at the leaves.
class IntEnumerator {
 public:
  IntEnumerator(const DefiniteForm& f, std::int64_t bound,
                const std::function<void(const std::vector<std::int64_t>&, std::int64_t)>& fn)
      : f_(f), bound_(bound), fn_(fn), x_(f.n, 0) {}

  // If top_fixed >= 0, only explores x_{n-1} = top_fixed (parallel partition).
  void run(std::optional<std::int64_t> top_fixed = std::nullopt) {
    if (f_.n == 0) {
      if (bound_ >= 0) fn_(x_, 0);
      return;
    }
    descend(f_.n - 1, 0.0, 0, top_fixed);
  }

  static std::pair<std::int64_t, std::int64_t> top_range(const DefiniteForm& f,
                                                         std::int64_t bound) {
    if (f.n == 0 || bound < 0) return {0, -1};
    int i = f.n - 1;
    double radius = std::sqrt(std::max(0.0, (static_cast<double>(bound) + kPad) / f.d[i]));
    auto lo = static_cast<std::int64_t>(std::ceil(-radius - kPad));
    auto hi = static_cast<std::int64_t>(std::floor(radius + kPad));
    return {lo, hi};
  }

 private:
  void descend(int i, double partial, std::int64_t exact_tail,
               std::optional<std::int64_t> top_fixed) {
    double center = 0.0;
    for (int j = i + 1; j < f_.n; ++j) center += f_.u[i][j] * static_cast<double>(x_[j]);
    double budget = static_cast<double>(bound_) - partial;
    if (budget < -kPad) return;
    double radius = std::sqrt(std::max(0.0, (budget + kPad) / f_.d[i]));
    auto lo = static_cast<std::int64_t>(std::ceil(-center - radius - kPad));
    auto hi = static_cast<std::int64_t>(std::floor(-center + radius + kPad));
    if (top_fixed) lo = hi = *top_fixed;

    std::int64_t w = 0;  // sum_{j>i} gram[i][j] x_j
    for (int j = i + 1; j < f_.n; ++j)
      if (x_[j] != 0) w += f_.gram[i][j] * x_[j];

    for (std::int64_t v = lo; v <= hi; ++v) {
      x_[i] = v;
      std::int64_t tail = exact_tail + f_.gram[i][i] * v * v + 2 * v * w;
      if (i == 0) {
        if (tail <= bound_) fn_(x_, tail);
      } else {
        double y = static_cast<double>(v) + center;
        descend(i - 1, partial + f_.d[i] * y * y, tail, std::nullopt);
      }
    }
    x_[i] = 0;
  }

  const DefiniteForm& f_;
  std::int64_t bound_;
  const std::function<void(const std::vector<std::int64_t>&, std::int64_t)>& fn_;
  std::vector<std::int64_t> x_;
};

// Exact variant with a rational center; used off the hot path.
class ShiftedEnumerator {
 public:
  ShiftedEnumerator(const DefiniteForm& f, std::vector<Rat> center, Rat bound)
      : f_(f), c_(std::move(center)), bound_(std::move(bound)), x_(f.n, 0) {}

  void run(const std::function<void(const std::vector<std::int64_t>&, const Rat&)>& fn) {
    fn_ = &fn;
    if (f_.n == 0) {
      if (bound_ >= 0) fn(x_, Rat(0));
      return;
    }
    descend(f_.n - 1, 0.0, Rat(0));
  }

 private:
  void descend(int i, double partial, const Rat& exact_tail) {
    double center = -static_cast<double>(c_[i]);
    for (int j = i + 1; j < f_.n; ++j)
      center += f_.u[i][j] * (static_cast<double>(x_[j]) - static_cast<double>(c_[j]));
    double budget = static_cast<double>(bound_) - partial;
    if (budget < -kPad) return;
    double radius = std::sqrt(std::max(0.0, (budget + kPad) / f_.d[i])) + 1e-6;
    auto lo = static_cast<std::int64_t>(std::ceil(-center - radius - kPad));
    auto hi = static_cast<std::int64_t>(std::floor(-center + radius + kPad));

    Rat w = 0;  // sum_{j>i} gram[i][j] (x_j - c_j)
    for (int j = i + 1; j < f_.n; ++j)
      w += Rat(f_.gram[i][j]) * (Rat(x_[j]) - c_[j]);

    for (std::int64_t v = lo; v <= hi; ++v) {
      x_[i] = v;
      Rat zi = Rat(v) - c_[i];
      Rat tail = exact_tail + Rat(f_.gram[i][i]) * zi * zi + 2 * zi * w;
      if (i == 0) {
        if (tail <= bound_) (*fn_)(x_, tail);
      } else {
        double y = static_cast<double>(v) + center;
        descend(i - 1, partial + f_.d[i] * y * y, tail);
      }
    }
    x_[i] = 0;
  }

  const DefiniteForm& f_;
  std::vector<Rat> c_;
  Rat bound_;
  std::vector<std::int64_t> x_;
  const std::function<void(const std::vector<std::int64_t>&, const Rat&)>* fn_ = nullptr;
};

int effective_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

void for_each_definite_vector(
    const std::vector<std::vector<std::int64_t>>& gram_posdef, std::int64_t bound,
    const std::function<void(const std::vector<std::int64_t>&, std::int64_t)>& fn) {
  DefiniteForm f = DefiniteForm::build(gram_posdef);
  IntEnumerator e(f, bound, fn);
  e.run();
}

std::vector<std::int64_t> count_by_norm(
    const std::vector<std::vector<std::int64_t>>& gram_posdef, std::int64_t max_norm,
    int threads) {
  DefiniteForm f = DefiniteForm::build(gram_posdef);
  const int nt = effective_threads(threads);
  auto [lo, hi] = IntEnumerator::top_range(f, max_norm);
  if (f.n == 0 || lo > hi) {
    std::vector<std::int64_t> hist(static_cast<size_t>(std::max<std::int64_t>(max_norm, 0)) + 1, 0);
    if (max_norm >= 0) hist[0] = 1;
    return hist;
  }

  std::vector<std::int64_t> tops;
  for (std::int64_t v = lo; v <= hi; ++v) tops.push_back(v);

  auto work = [&](size_t begin, size_t end) {
    std::vector<std::int64_t> hist(static_cast<size_t>(max_norm) + 1, 0);
    auto cb = [&](const std::vector<std::int64_t>&, std::int64_t q) {
      if (q <= max_norm) hist[static_cast<size_t>(q)] += 1;
    };
    IntEnumerator e(f, max_norm, cb);
    for (size_t k = begin; k < end; ++k) e.run(tops[k]);
    return hist;
  };

  if (nt <= 1 || tops.size() <= 1) return work(0, tops.size());

  size_t chunks = std::min<size_t>(tops.size(), static_cast<size_t>(nt));
  std::vector<std::future<std::vector<std::int64_t>>> futures;
  size_t per = (tops.size() + chunks - 1) / chunks;
  for (size_t c = 0; c < chunks; ++c) {
    size_t b = c * per, e = std::min(tops.size(), b + per);
    if (b >= e) break;
    futures.push_back(std::async(std::launch::async, work, b, e));
  }
  std::vector<std::int64_t> hist(static_cast<size_t>(max_norm) + 1, 0);
  for (auto& fu : futures) {
    auto part = fu.get();
    for (size_t m = 0; m < hist.size(); ++m) hist[m] += part[m];
  }
  return hist;
}

std::vector<std::vector<Int>> enumerate_shifted(
    const std::vector<std::vector<std::int64_t>>& gram_posdef,
    const std::vector<Rat>& center, const Rat& target) {
  std::vector<std::vector<Int>> out;
  if (target < 0) return out;
  DefiniteForm f = DefiniteForm::build(gram_posdef);
  ShiftedEnumerator e(f, center, target);
  e.run([&](const std::vector<std::int64_t>& x, const Rat& q) {
    if (q == target) {
      std::vector<Int> v(x.size());
      for (size_t i = 0; i < x.size(); ++i) v[i] = x[i];
      out.push_back(std::move(v));
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> closest_vector(
    const std::vector<std::vector<std::int64_t>>& gram_posdef,
    const std::vector<Rat>& center, Rat* dist_out) {
  const int n = static_cast<int>(gram_posdef.size());
  DefiniteForm f = DefiniteForm::build(gram_posdef);
  // rounding the center gives an upper bound for the search radius
  std::vector<std::int64_t> seed(n);
  std::vector<Rat> diff(n);
  for (int i = 0; i < n; ++i) {
    Int r = rat_round(center[i]);
    auto r64 = to_int64(r);
    if (!r64) raise("Overflow", "closest_vector center out of range");
    seed[i] = *r64;
    diff[i] = Rat(r) - center[i];
  }
  Rat best_q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      best_q += Rat(gram_posdef[i][j]) * diff[i] * diff[j];

  std::vector<std::int64_t> best = seed;
  ShiftedEnumerator e(f, center, best_q);
  e.run([&](const std::vector<std::int64_t>& x, const Rat& q) {
    if (q < best_q || (q == best_q && x < best)) {
      best_q = q;
      best = x;
    }
  });
  if (dist_out) *dist_out = best_q;
  std::vector<Int> out(n);
  for (int i = 0; i < n; ++i) out[i] = best[i];
  return out;
}

bool is_positive_definite_exact(const std::vector<std::vector<Int>>& m) {
  const int n = static_cast<int>(m.size());
  // Bareiss leading principal minors; all must be positive
  std::vector<std::vector<Int>> a = m;
  Int prev = 1;
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          a[i][j] = (a[i][j] * a[k - 1][k - 1] - a[i][k - 1] * a[k - 1][j]) / prev;
      prev = a[k - 1][k - 1];
    }
    if (a[k][k] <= 0) return false;
  }
  return true;
}

namespace {

// Column-style Hermite reduction: returns unimodular U (r x r) with
// M U = [H | 0], H with rank(M) pivot columns. Used to solve pairing systems.
struct HnfResult {
  std::vector<std::vector<Int>> u;  // r x r unimodular
  std::vector<std::vector<Int>> h;  // m x r, trailing columns zero
  int rank = 0;
};

HnfResult hnf_columns(std::vector<std::vector<Int>> m, int cols) {
  const int rows = static_cast<int>(m.size());
  HnfResult res;
  res.u.assign(cols, std::vector<Int>(cols, 0));
  for (int i = 0; i < cols; ++i) res.u[i][i] = 1;
  int col = 0;
  for (int row = 0; row < rows && col < cols; ++row) {
    // gcd-eliminate entries m[row][col..] into column col
    int pivot = -1;
    for (int c = col; c < cols; ++c)
      if (m[row][c] != 0) { pivot = c; break; }
    if (pivot < 0) continue;
    if (pivot != col) {
      for (int r = 0; r < rows; ++r) std::swap(m[r][pivot], m[r][col]);
      for (int r = 0; r < cols; ++r) std::swap(res.u[r][pivot], res.u[r][col]);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = col + 1; c < cols; ++c) {
        if (m[row][c] == 0) continue;
        if (m[row][col] == 0) {
          for (int r = 0; r < rows; ++r) std::swap(m[r][c], m[r][col]);
          for (int r = 0; r < cols; ++r) std::swap(res.u[r][c], res.u[r][col]);
          changed = true;
          continue;
        }
        Int q = m[row][c] / m[row][col];
        if (q != 0) {
          for (int r = 0; r < rows; ++r) m[r][c] -= q * m[r][col];
          for (int r = 0; r < cols; ++r) res.u[r][c] -= q * res.u[r][col];
        }
        if (m[row][c] != 0) {
          for (int r = 0; r < rows; ++r) std::swap(m[r][c], m[r][col]);
          for (int r = 0; r < cols; ++r) std::swap(res.u[r][c], res.u[r][col]);
          changed = true;
        }
      }
    }
    if (m[row][col] != 0) ++col;
  }
  res.rank = col;
  res.h = std::move(m);
  return res;
}

std::vector<LatticeVector> box_scan(const LatticePtr& lattice, const RootConstraint& c) {
  const int n = lattice->rank();
  const std::int64_t b = *c.coordinate_bound;
  double nodes = 1;
  for (int i = 0; i < n; ++i) nodes *= static_cast<double>(2 * b + 1);
  if (nodes > 5e8)
    raise("UnboundedConstraint",
          "box scan of " + std::to_string(nodes) + " nodes exceeds the budget");
  std::vector<LatticeVector> out;
  std::vector<std::int64_t> x(n, -b);
  LatticePtr lat = lattice;
  while (true) {
    std::vector<Rat> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = x[i];
    LatticeVector v(lat, coords);
    if (norm_value(v) == Rat(c.norm)) {
      bool ok = true;
      for (const auto& [w, t] : c.pairings)
        if (pair_value(v, w) != Rat(t)) { ok = false; break; }
      if (ok) out.push_back(std::move(v));
    }
    int i = 0;
    while (i < n && x[i] == b) { x[i] = -b; ++i; }
    if (i == n) break;
    ++x[i];
  }
  return out;
}

}  // namespace

std::vector<LatticeVector> enumerate_roots(const LatticePtr& lattice,
                                           const RootConstraint& constraint,
                                           int threads) {
  (void)threads;
  const int n = lattice->rank();
  for (const auto& [w, t] : constraint.pairings) {
    if (!w.lattice()->same_as(*lattice)) raise("LatticeMismatch", "pairing vector lattice differs");
    if (!w.integral()) raise("NotIntegral", "pairing vectors must be integral");
  }
  if (constraint.coordinate_bound && *constraint.coordinate_bound < 1)
    raise("UnboundedConstraint", "coordinate_bound must be >= 1");

  std::vector<LatticeVector> out;

  auto accept_sorted = [&](std::vector<LatticeVector> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };

  // Case 1: negative definite, no pairing conditions: direct kernel run.
  if (lattice->is_negative_definite() && constraint.pairings.empty()) {
    if (constraint.norm > 0) return out;
    if (constraint.norm == 0) {
      out.push_back(LatticeVector::zero(lattice));
      return out;
    }
    std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i][j] = -lattice->gram(i, j);
    auto tgt = to_int64(-constraint.norm);
    if (!tgt) raise("Overflow", "norm target out of range");
    for_each_definite_vector(g, *tgt, [&](const std::vector<std::int64_t>& x, std::int64_t q) {
      if (q != *tgt) return;
      std::vector<Rat> coords(n);
      for (int i = 0; i < n; ++i) coords[i] = x[i];
      out.emplace_back(lattice, std::move(coords));
    });
    return accept_sorted(std::move(out));
  }

  // Case 2: pairing conditions; solve them over Z and enumerate the
  // (necessarily definite) solution fiber exactly.
  if (!constraint.pairings.empty()) {
    const int m = static_cast<int>(constraint.pairings.size());
    std::vector<std::vector<Int>> rows(m, std::vector<Int>(n, 0));
    std::vector<Int> targets(m);
    for (int k = 0; k < m; ++k) {
      const auto& w = constraint.pairings[k].first;
      for (int i = 0; i < n; ++i) {
        Int acc = 0;
        for (int j = 0; j < n; ++j) acc += Int(lattice->gram(i, j)) * rat_num(w[j]);
        rows[k][i] = acc;
      }
      targets[k] = constraint.pairings[k].second;
    }
    auto hnf = hnf_columns(rows, n);
    // particular solution: H y = targets with H lower-staircase on pivot cols
    std::vector<Int> y(n, 0);
    {
      std::vector<Int> rem = targets;
      int col = 0;
      for (int row = 0; row < m; ++row) {
        if (col < hnf.rank && hnf.h[row][col] != 0) {
          Int q = rem[row] / hnf.h[row][col];
          if (q * hnf.h[row][col] != rem[row]) return out;  // no integral solution
          y[col] = q;
          for (int r2 = row; r2 < m; ++r2) rem[r2] -= q * hnf.h[r2][col];
          ++col;
        }
        if (rem[row] != 0) {
          // row unreachable by remaining pivots
          bool all_zero = true;
          for (int c2 = col; c2 < n; ++c2)
            if (hnf.h[row][c2] != 0) all_zero = false;
          if (all_zero) return out;
        }
      }
      for (int row = 0; row < m; ++row) if (rem[row] != 0) return out;
    }
    std::vector<Int> x0(n, 0);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c) x0[i] += hnf.u[i][c] * y[c];

    const int free_rank = n - hnf.rank;
    std::vector<std::vector<Int>> kernel(free_rank, std::vector<Int>(n));
    for (int k = 0; k < free_rank; ++k)
      for (int i = 0; i < n; ++i) kernel[k][i] = hnf.u[i][hnf.rank + k];

    // fiber Gram B = K G K^T must be negative definite for finiteness
    std::vector<std::vector<Int>> fiber(free_rank, std::vector<Int>(free_rank, 0));
    for (int a = 0; a < free_rank; ++a)
      for (int b = 0; b < free_rank; ++b) {
        Int acc = 0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            acc += kernel[a][i] * Int(lattice->gram(i, j)) * kernel[b][j];
        fiber[a][b] = acc;
      }
    std::vector<std::vector<Int>> neg(fiber);
    for (auto& r : neg)
      for (auto& v : r) v = -v;
    if (free_rank > 0 && !is_positive_definite_exact(neg)) {
      if (constraint.coordinate_bound) return accept_sorted(box_scan(lattice, constraint));
      raise("UnboundedConstraint", "pairing conditions leave an indefinite fiber");
    }

    // Q(x0 + K^T t) = norm  <=>  (t + c)^T (-B) (t + c) = q0 - norm with
    // c = B^{-1} K G x0 (rational), q0 = Q(x0) + c^T B c ... solved directly:
    // expand exactly via rational linear algebra.
    // linear term: 2 K G x0
    std::vector<Rat> lin(free_rank, Rat(0));
    Rat q0 = 0;
    {
      std::vector<Int> gx0(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gx0[i] += Int(lattice->gram(i, j)) * x0[j];
      for (int i = 0; i < n; ++i) q0 += Rat(x0[i]) * Rat(gx0[i]);
      for (int a = 0; a < free_rank; ++a) {
        Int acc = 0;
        for (int i = 0; i < n; ++i) acc += kernel[a][i] * gx0[i];
        lin[a] = Rat(2) * Rat(acc);
      }
    }
    // -Q form on t: P(t) = -(t^T B t); want t^T B t + lin.t + q0 = norm
    // i.e. P(t - center) = q0' where center solves -2 B center = lin.
    // Solve B c = -lin/2 by rational Gaussian elimination.
    std::vector<Rat> center(free_rank, Rat(0));
    if (free_rank > 0) {
      std::vector<std::vector<Rat>> a(free_rank, std::vector<Rat>(free_rank + 1));
      for (int i = 0; i < free_rank; ++i) {
        for (int j = 0; j < free_rank; ++j) a[i][j] = Rat(fiber[i][j]);
        a[i][free_rank] = -lin[i] / 2;
      }
      for (int cpos = 0; cpos < free_rank; ++cpos) {
        int piv = -1;
        for (int r = cpos; r < free_rank; ++r)
          if (a[r][cpos] != 0) { piv = r; break; }
        std::swap(a[cpos], a[piv]);
        for (int r = 0; r < free_rank; ++r) {
          if (r == cpos || a[r][cpos] == 0) continue;
          Rat fct = a[r][cpos] / a[cpos][cpos];
          for (int c2 = cpos; c2 <= free_rank; ++c2) a[r][c2] -= fct * a[cpos][c2];
        }
      }
      for (int i = 0; i < free_rank; ++i) center[i] = a[i][free_rank] / a[i][i];
    }
    // value at center: q0 + lin.center + center^T B center
    Rat at_center = q0;
    for (int i = 0; i < free_rank; ++i) at_center += lin[i] * center[i];
    for (int i = 0; i < free_rank; ++i)
      for (int j = 0; j < free_rank; ++j)
        at_center += center[i] * Rat(fiber[i][j]) * center[j];
    // t^T B t part relative to center: Q_total = at_center + (t-c)^T B (t-c)
    Rat target = at_center - Rat(constraint.norm);  // = (t-c)^T (-B) (t-c)
    if (free_rank == 0) {
      if (q0 == Rat(constraint.norm)) {
        std::vector<Rat> coords(n);
        for (int i = 0; i < n; ++i) coords[i] = x0[i];
        out.emplace_back(lattice, std::move(coords));
      }
      return accept_sorted(std::move(out));
    }
    std::vector<std::vector<std::int64_t>> neg64(free_rank, std::vector<std::int64_t>(free_rank));
    for (int i = 0; i < free_rank; ++i)
      for (int j = 0; j < free_rank; ++j) {
        auto v = to_int64(neg[i][j]);
        if (!v) raise("Overflow", "fiber Gram exceeds int64");
        neg64[i][j] = *v;
      }
    for (auto& t : enumerate_shifted(neg64, center, target)) {
      std::vector<Rat> coords(n);
      for (int i = 0; i < n; ++i) {
        Int acc = x0[i];
        for (int k = 0; k < free_rank; ++k) acc += kernel[k][i] * t[k];
        coords[i] = acc;
      }
      out.emplace_back(lattice, std::move(coords));
    }
    return accept_sorted(std::move(out));
  }

  // Case 3: a single hyperbolic plane, nothing else: divisor method.
  if (n == 2 && lattice->summands().size() == 1 &&
      lattice->summands()[0].kind == SummandKind::U) {
    // 2ab = norm
    if (constraint.norm % 2 != 0) return out;
    Int half = constraint.norm / 2;
    if (half == 0) {
      raise("UnboundedConstraint", "isotropic vectors in U form infinite families");
    }
    Int habs = half < 0 ? -half : half;
    for (Int d = 1; d * d <= habs; ++d) {
      if (habs % d != 0) continue;
      Int e = habs / d;
      std::vector<std::pair<Int, Int>> pairs = {{d, e}, {e, d}};
      for (auto [a, b] : pairs) {
        std::vector<std::pair<Int, Int>> signed_pairs;
        if (half > 0) signed_pairs = {{a, b}, {-a, -b}};
        else signed_pairs = {{a, -b}, {-a, b}};
        for (auto [p, q] : signed_pairs) {
          std::vector<Rat> coords = {Rat(p), Rat(q)};
          out.emplace_back(lattice, std::move(coords));
        }
      }
    }
    return accept_sorted(std::move(out));
  }

  if (constraint.coordinate_bound) return accept_sorted(box_scan(lattice, constraint));

  raise("UnboundedConstraint",
        "no finiteness certificate: lattice indefinite, no pairing conditions, no box");
}

}  // namespace k3kit
