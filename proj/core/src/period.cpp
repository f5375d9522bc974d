#include "k3kit/period.hpp"

#include <cmath>

#include "k3kit/error.hpp"

namespace k3kit {

bool period_point_valid(const PeriodPoint& pt) {
  if (pt.tau.rows() != pt.p || pt.tau.cols() != pt.q) return false;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(pt.p, pt.p) - pt.tau * pt.tau.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  return es.eigenvalues().minCoeff() > kPlanePositivityTol;
}

PeriodPoint make_period_point(const Eigen::MatrixXd& tau, int p, int q) {
  PeriodPoint pt{tau, p, q};
  if (!period_point_valid(pt))
    raise("NotPositivePlane", "I - tau tau^T is not positive definite");
  return pt;
}

PeriodPoint normalize_basis(const Eigen::MatrixXd& b, int p, int q) {
  if (b.rows() != p || b.cols() != p + q)
    raise("DimensionMismatch", "spanning matrix must be p x (p+q)");
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(p + q, p + q);
  for (int i = p; i < p + q; ++i) j(i, i) = -1;
  Eigen::FullPivLU<Eigen::MatrixXd> rank_check(b);
  if (rank_check.rank() < p) raise("DegeneratePlane", "rows do not span a p-plane");
  Eigen::MatrixXd plane_gram = b * j * b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(plane_gram);
  if (es.eigenvalues().minCoeff() <= kPlanePositivityTol)
    raise("NotPositivePlane", "form is not positive definite on the span");
  Eigen::MatrixXd a = b.leftCols(p);
  // det(a) != 0 whenever the plane is positive
  Eigen::MatrixXd tau = a.partialPivLu().solve(b.rightCols(q));
  return make_period_point(tau, p, q);
}

double gram_det(const PeriodPoint& pt) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(pt.p, pt.p) - pt.tau * pt.tau.transpose();
  return g.determinant();
}

double bergman_norm(const Eigen::MatrixXd& a) { return a.squaredNorm(); }

Frame frame_for(const LatticePtr& lattice) {
  const int n = lattice->rank();
  // exact block-wise orthogonalization over Q, scaled to unit norms in double
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> norms;  // signed rational norms before scaling
  for (const auto& sm : lattice->summands()) {
    if (sm.kind == SummandKind::U) {
      std::vector<Rat> plus(n, Rat(0)), minus(n, Rat(0));
      plus[sm.offset] = 1; plus[sm.offset + 1] = 1;    // norm +2
      minus[sm.offset] = 1; minus[sm.offset + 1] = -1; // norm -2
      rows.push_back(plus); norms.push_back(Rat(2));
      rows.push_back(minus); norms.push_back(Rat(-2));
    } else {
      // Gram-Schmidt on the (definite) block over Q
      std::vector<std::vector<Rat>> basis;
      for (int i = 0; i < sm.rank; ++i) {
        std::vector<Rat> v(n, Rat(0));
        v[sm.offset + i] = 1;
        LatticeVector vi(lattice, v);
        for (size_t k = 0; k < basis.size(); ++k) {
          LatticeVector bk(lattice, basis[k]);
          Rat c = pair_value(vi, bk) / pair_value(bk, bk);
          vi = vi - bk.scaled(c);
        }
        basis.push_back(vi.coords());
        rows.push_back(vi.coords());
        norms.push_back(norm_value(vi));
      }
    }
  }
  // order: positive-norm rows first, preserving relative order
  std::vector<int> order;
  int p = 0;
  for (size_t i = 0; i < rows.size(); ++i)
    if (norms[i] > 0) { order.push_back(static_cast<int>(i)); ++p; }
  for (size_t i = 0; i < rows.size(); ++i)
    if (norms[i] < 0) order.push_back(static_cast<int>(i));

  Frame f;
  f.lattice = lattice;
  f.p = p;
  f.q = n - p;
  f.rows.resize(n, n);
  for (int r = 0; r < n; ++r) {
    int src = order[r];
    double scale = 1.0 / std::sqrt(std::abs(static_cast<double>(norms[src])));
    for (int c = 0; c < n; ++c)
      f.rows(r, c) = static_cast<double>(rows[src][c]) * scale;
  }
  f.rows_inv = f.rows.inverse();
  return f;
}

std::vector<std::vector<Int>> word_matrix(const IsometryWord& word) {
  const auto& lat = word.ambient();
  const int n = lat->rank();
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i) {
    LatticeVector img = word.apply(LatticeVector::basis(lat, i));
    if (!img.integral()) raise("InternalError", "word image not integral");
    for (int j = 0; j < n; ++j) m[i][j] = rat_num(img[j]);
  }
  return m;
}

bool is_lattice_isometry(const LatticePtr& lattice,
                         const std::vector<std::vector<Int>>& gamma) {
  const int n = lattice->rank();
  if (static_cast<int>(gamma.size()) != n) return false;
  // (gamma G gamma^T)_{ik} = G_{ik}
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      Int acc = 0;
      for (int a = 0; a < n; ++a) {
        if (gamma[i][a] == 0) continue;
        Int row = 0;
        for (int b = 0; b < n; ++b) row += Int(lattice->gram(a, b)) * gamma[k][b];
        acc += gamma[i][a] * row;
      }
      if (acc != lattice->gram(i, k)) return false;
    }
  }
  return true;
}

AutomorphyFactor factor_of_automorphy(const Frame& frame,
                                      const std::vector<std::vector<Int>>& gamma,
                                      const PeriodPoint& pt) {
  if (!is_lattice_isometry(frame.lattice, gamma))
    raise("NotIsometry", "matrix does not preserve the Gram form");
  const int n = frame.lattice->rank();
  if (pt.p + pt.q != n) raise("DimensionMismatch", "point size does not match lattice");
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = static_cast<double>(gamma[i][j]);
  // row-vector action in frame coordinates
  Eigen::MatrixXd gf = frame.rows * g * frame.rows_inv;
  Eigen::MatrixXd point_rows(pt.p, n);
  point_rows << Eigen::MatrixXd::Identity(pt.p, pt.p), pt.tau;
  Eigen::MatrixXd moved = point_rows * gf;
  Eigen::MatrixXd mu = moved.leftCols(pt.p);
  Eigen::MatrixXd sigma = moved.rightCols(pt.q);
  Eigen::MatrixXd tau = mu.partialPivLu().solve(sigma);
  AutomorphyFactor out;
  out.mu = mu;
  out.image = make_period_point(tau, pt.p, pt.q);
  return out;
}

namespace {

Eigen::VectorXd to_frame_coords(const Frame& f, const LatticeVector& v) {
  const int n = f.lattice->rank();
  Eigen::RowVectorXd basis_coords(n);
  for (int i = 0; i < n; ++i) basis_coords(i) = static_cast<double>(v[i]);
  // v = c * rows  =>  c = v * rows^{-1}
  Eigen::RowVectorXd c = basis_coords * f.rows_inv;
  return c.transpose();
}

double jdot(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int p) {
  double acc = 0;
  for (int i = 0; i < a.size(); ++i) acc += (i < p ? 1.0 : -1.0) * a(i) * b(i);
  return acc;
}

}  // namespace

SplitResult split_h(const Frame& frame, const PeriodPoint& pt,
                    const LatticeVector& p1, const LatticeVector& p2) {
  const int p = pt.p, q = pt.q, n = p + q;
  if (p < 3 || q < 2)
    raise("HypothesisViolated", "split needs p >= 3 and q >= 2");
  if (norm_value(p1) != 0 || norm_value(p2) != 0 || pair_value(p1, p2) != 1)
    raise("PairNotHyperbolic", "need isotropic vectors with pairing 1");

  Eigen::VectorXd u1 = to_frame_coords(frame, p1);
  Eigen::VectorXd u2 = to_frame_coords(frame, p2);

  // J-orthonormal frame of W = {u1,u2}^perp, p-1 positives first
  Eigen::MatrixXd w_frame(n - 2, n);
  {
    std::vector<Eigen::VectorXd> basis;
    std::vector<double> norms;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 2; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v(i) = 1.0;
      // remove the span(u1,u2) component: pi(v) = <v,u2> u1 + <v,u1> u2
      v -= jdot(v, u2, p) * u1 + jdot(v, u1, p) * u2;
      for (const auto& b : basis) {
        double nb = jdot(b, b, p);
        v -= (jdot(v, b, p) / nb) * b;
      }
      double nv = jdot(v, v, p);
      if (std::abs(nv) < 1e-9) continue;
      basis.push_back(v / std::sqrt(std::abs(nv)));
      norms.push_back(nv);
    }
    if (static_cast<int>(basis.size()) != n - 2)
      raise("InternalError", "W-frame construction degenerate");
    int row = 0;
    for (size_t i = 0; i < basis.size(); ++i)
      if (norms[i] > 0) w_frame.row(row++) = basis[i].transpose();
    for (size_t i = 0; i < basis.size(); ++i)
      if (norms[i] < 0) w_frame.row(row++) = basis[i].transpose();
  }

  Eigen::MatrixXd rows(p, n);
  rows << Eigen::MatrixXd::Identity(p, p), pt.tau;

  // V1 = E cap u1^perp: combine rows to cancel the u1-pairing
  Eigen::VectorXd w(p);
  for (int j = 0; j < p; ++j) w(j) = jdot(rows.row(j).transpose(), u1, p);
  int kmax = 0;
  for (int j = 1; j < p; ++j)
    if (std::abs(w(j)) > std::abs(w(kmax))) kmax = j;
  if (std::abs(w(kmax)) < 1e-12)
    raise("InternalError", "plane lies inside u1-perp");
  Eigen::MatrixXd v1(p - 1, n);
  {
    int r = 0;
    for (int j = 0; j < p; ++j) {
      if (j == kmax) continue;
      v1.row(r++) = rows.row(j) - (w(j) / w(kmax)) * rows.row(kmax);
    }
  }
  // f1 = row combo orthogonal to every V1 row
  Eigen::VectorXd f1;
  {
    Eigen::MatrixXd sys(p - 1, p);
    for (int r = 0; r < p - 1; ++r)
      for (int j = 0; j < p; ++j)
        sys(r, j) = jdot(v1.row(r).transpose(), rows.row(j).transpose(), p);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    Eigen::MatrixXd ker = lu.kernel();
    Eigen::VectorXd coef = ker.col(0);
    f1 = (coef.transpose() * rows).transpose();
  }
  double t = jdot(f1, u1, p);
  if (std::abs(t) < 1e-12) raise("InternalError", "f1 pairs trivially with u1");
  f1 /= t;
  double lambda = jdot(f1, u2, p);
  // mu = W-part of f1 in w_frame coordinates
  Eigen::VectorXd f1w = f1 - jdot(f1, u2, p) * u1 - jdot(f1, u1, p) * u2;
  Eigen::VectorXd mu(n - 2);
  for (int r = 0; r < n - 2; ++r) {
    double nb = jdot(w_frame.row(r).transpose(), w_frame.row(r).transpose(), p);
    mu(r) = jdot(f1w, w_frame.row(r).transpose(), p) / nb;
  }

  // small point: V1 projected into W, in w_frame coordinates
  Eigen::MatrixXd v1w(p - 1, n - 2);
  for (int r = 0; r < p - 1; ++r) {
    Eigen::VectorXd v = v1.row(r).transpose();
    Eigen::VectorXd proj = v - jdot(v, u2, p) * u1 - jdot(v, u1, p) * u2;
    for (int c = 0; c < n - 2; ++c) {
      double nb = jdot(w_frame.row(c).transpose(), w_frame.row(c).transpose(), p);
      v1w(r, c) = jdot(proj, w_frame.row(c).transpose(), p) / nb;
    }
  }
  SplitResult out;
  out.small = normalize_basis(v1w, p - 1, q - 1);
  out.mu = mu;
  out.lambda = lambda;
  out.w_frame = w_frame;
  return out;
}

PeriodPoint join_h(const Frame& frame, const SplitResult& parts,
                   const LatticeVector& p1, const LatticeVector& p2) {
  const int n = frame.lattice->rank();
  const int p_small = parts.small.p;
  Eigen::VectorXd u1 = to_frame_coords(frame, p1);
  Eigen::VectorXd u2 = to_frame_coords(frame, p2);
  const int p = p_small + 1;

  // lift the small plane's rows back into W, then into R^{p,q}
  Eigen::MatrixXd small_rows(p_small, n - 2);
  small_rows << Eigen::MatrixXd::Identity(p_small, p_small), parts.small.tau;
  Eigen::MatrixXd rows(p, n);
  for (int r = 0; r < p_small; ++r) {
    Eigen::VectorXd vbar = (small_rows.row(r) * parts.w_frame).transpose();
    // v = vbar + a u1 with a = -<mu, vbar>
    Eigen::VectorXd mu_amb = (parts.mu.transpose() * parts.w_frame).transpose();
    double a = -jdot(mu_amb, vbar, p);
    rows.row(r) = (vbar + a * u1).transpose();
  }
  Eigen::VectorXd mu_amb = (parts.mu.transpose() * parts.w_frame).transpose();
  rows.row(p - 1) = (mu_amb + parts.lambda * u1 + u2).transpose();
  return normalize_basis(rows, p, frame.lattice->rank() - p);
}

}  // namespace k3kit
