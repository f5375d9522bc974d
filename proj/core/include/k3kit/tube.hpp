#pragma once

#include <vector>

#include "k3kit/numeric.hpp"

namespace k3kit {

// exact complex rational
struct RatC {
  Rat re = 0, im = 0;

  RatC() = default;
  RatC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  RatC operator+(const RatC& o) const { return {re + o.re, im + o.im}; }
  RatC operator-(const RatC& o) const { return {re - o.re, im - o.im}; }
  RatC operator*(const RatC& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  RatC conj() const { return {re, -im}; }
  bool operator==(const RatC& o) const { return re == o.re && im == o.im; }
};

// Point of the tube model of h_{2,p}: w = x + i y with x, y in R^{1,p-1}
// (form diag(+1, -1, ..., -1)) and y in the positive cone V+ (norm > 0,
// first coordinate > 0).
struct TubePoint {
  std::vector<RatC> w;
};

// Lorentzian pairing on R^{1,p-1}, exact
RatC lorentz_pair(const std::vector<RatC>& a, const std::vector<RatC>& b);
Rat lorentz_pair_real(const std::vector<Rat>& a, const std::vector<Rat>& b);

bool in_positive_cone(const std::vector<Rat>& y);

// Psi(w) = (w_1..w_p, -<w,w>/2, 1) in R^{2,p} (x) C, where R^{2,p} carries the
// Lorentzian block plus a hyperbolic U on the last two coordinates. The image
// satisfies <Psi,Psi> = 0 exactly and <Psi, conj Psi> > 0.
struct TubeEmbedding {
  std::vector<RatC> psi;        // length p + 2
  RatC isotropy;                // <Psi, Psi>, always 0
  Rat pairing_with_conjugate;   // <Psi, conj Psi>, real
};

TubeEmbedding tube_embed(const TubePoint& w);

}  // namespace k3kit
