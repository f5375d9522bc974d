#pragma once

#include <string>
#include <vector>

#include "k3kit/lattice.hpp"
#include "k3kit/tube.hpp"

namespace k3kit {

// B-field on the K3 lattice: complex class with positive-normed imaginary part
struct BField {
  LatticePtr lattice;           // U^3+E8(-1)^2
  std::vector<Rat> re, im;      // length 22
};

void validate_bfield(const BField& b);

// V = (b, 1, -<b,b>/2) in (Lambda_K3 (+) U0) (x) C; U0 occupies the last two
// coordinates of the rank-24 extension. <V,V> = 0 exactly.
struct ExtendedBField {
  LatticePtr extended;          // U^3+E8(-1)^2+U (rank 24)
  std::vector<RatC> v;          // length 24
};

ExtendedBField extend_bfield(const BField& b);

struct FourPlane {
  std::vector<std::vector<Rat>> rows;   // 4 x 24: Re w, Im w, Re V, Im V
  std::vector<std::vector<Rat>> gram;   // 4 x 4, positive definite
};

// Assemble the positive 4-plane from a period vector omega (Riemann relations
// checked exactly) and a B-field.
FourPlane four_plane(const std::vector<RatC>& omega, const BField& b);

// Picard/transcendental split of the K3 lattice along whole summands, with a
// distinguished U inside the transcendental part.
struct MarkedMSurfaceData {
  LatticePtr ambient;              // U^3+E8(-1)^2
  std::vector<int> picard;         // summand indices of M
  std::vector<int> transcendental; // summand indices of T
  int u_choice = -1;               // summand index of the chosen U inside T
};

void validate_msurface(const MarkedMSurfaceData& d);

int rank_of_blocks(const LatticePtr& lat, const std::vector<int>& blocks);
std::pair<int, int> signature_of_blocks(const LatticePtr& lat, const std::vector<int>& blocks);

// Pic(Y) = U-perp inside T, T_Y = M (+) U; the chosen U carries over.
MarkedMSurfaceData mirror_swap(const MarkedMSurfaceData& d);

}  // namespace k3kit
