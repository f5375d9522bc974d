#pragma once

#include <Eigen/Dense>

#include "k3kit/isometry.hpp"
#include "k3kit/lattice.hpp"

namespace k3kit {

// Positive p-plane in R^{p,q} through its flat coordinates: the plane is
// spanned by g_j = e_j + sum_i tau(j,i) e_{p+i} against the standard frame
// with form diag(+I_p, -I_q).
struct PeriodPoint {
  Eigen::MatrixXd tau;  // p x q
  int p = 0, q = 0;
};

// min eigenvalue of I - tau tau^T must exceed this for a valid point
constexpr double kPlanePositivityTol = 1e-10;

bool period_point_valid(const PeriodPoint& pt);
PeriodPoint make_period_point(const Eigen::MatrixXd& tau, int p, int q);

// Row-reduce a spanning matrix B (p x (p+q), rows span a positive p-plane)
// to the normal form [I | tau].
PeriodPoint normalize_basis(const Eigen::MatrixXd& b, int p, int q);

// g(tau) = det(<g_i, g_j>) = det(I - tau tau^T); positive on the domain
double gram_det(const PeriodPoint& pt);

// sum of squared entries (the flat metric's quadratic form at the base point)
double bergman_norm(const Eigen::MatrixXd& a);

// Orthonormal-ish frame for a lattice: rows F satisfy F G F^T = diag(+I_p,
// -I_q), positives first. Built by per-block rational reduction, then scaled.
struct Frame {
  LatticePtr lattice;
  Eigen::MatrixXd rows;      // (p+q) x (p+q), frame vectors in basis coords
  Eigen::MatrixXd rows_inv;  // cached inverse
  int p = 0, q = 0;
};

Frame frame_for(const LatticePtr& lattice);

// integer matrix (rows = images of basis vectors) of a word
std::vector<std::vector<Int>> word_matrix(const IsometryWord& word);

// exact check gamma G gamma^T = G in the row convention
bool is_lattice_isometry(const LatticePtr& lattice,
                         const std::vector<std::vector<Int>>& gamma);

struct AutomorphyFactor {
  Eigen::MatrixXd mu;  // p x p, det != 0
  PeriodPoint image;
};

// Split [I | tau] gamma = (mu, sigma) into the automorphy factor and the image
// point mu^{-1} sigma; gamma is an exact isometry of the lattice.
AutomorphyFactor factor_of_automorphy(const Frame& frame,
                                      const std::vector<std::vector<Int>>& gamma,
                                      const PeriodPoint& pt);

struct SplitResult {
  PeriodPoint small;       // point of h_{p-1,q-1}
  Eigen::VectorXd mu;      // coordinates in the W-frame, length p+q-2
  double lambda = 0;
  Eigen::MatrixXd w_frame; // (p+q-2) x (p+q) rows: J-orthonormal frame of W
};

// Split a plane along a hyperbolic pair of lattice vectors (isotropic,
// pairing 1): E decomposes into (E cap P1-perp projected to W, and the
// leftover direction f1 = mu + lambda P1 + P2).
SplitResult split_h(const Frame& frame, const PeriodPoint& pt,
                    const LatticeVector& p1, const LatticeVector& p2);

// Reassemble the plane from split data (round-trip companion of split_h).
PeriodPoint join_h(const Frame& frame, const SplitResult& parts,
                   const LatticeVector& p1, const LatticeVector& p2);

}  // namespace k3kit
