#pragma once

#include <string>

#include "k3kit/isometry.hpp"
#include "k3kit/lattice.hpp"

namespace k3kit {

// Replayable witness: applying word to input yields output, exactly.
struct ReductionCertificate {
  LatticeVector input;
  IsometryWord word;
  LatticeVector output;
  int steps = 0;
};

// replay the word and compare against the recorded output
bool certificate_replays(const ReductionCertificate& cert);

// Constructive norm-shift: for rational v not in the lattice, a lattice vector
// mu with |<v-mu, v-mu> - x| < 1, found by stepping along an isotropic pair
// that pairs non-integrally with v.
LatticeVector approximate_norm_shift(const LatticeVector& v, const Rat& x);

// Conjugates a root r in M = L (+) U (distinguished U = last U summand,
// coordinates (v, m, n), e = (0,0,1)) into the form m = 0, or m = 1 with
// v/m in L, by reflections in roots pairing 1 with e. |m| at least halves at
// every accepted step when L contains a U summand; for definite L a
// closest-vector choice is used instead.
ReductionCertificate gamma1_reduce(const LatticeVector& r, int budget = 10000);

// Full orbit reduction to the canonical root f1 - f2 in the first U summand.
// Ambient must be a sum of U and E8(-1) summands with at least one U.
ReductionCertificate canonicalize_root(const LatticeVector& delta, int budget = 10000);

struct DiscriminantComponent {
  std::string tag;  // "perp-root" or "lstar-component"
  ReductionCertificate certificate;
  Rat lstar_coefficient;  // k: final projection onto l-perp equals k * l*
};

// Decides which discriminant component a root's orthogonal hyperplane lands
// in, relative to the polarization l = e1 + n e2 in the first U summand of
// U^3 + E8(-1)^2: roots orthogonal to l are their own component; all others
// are driven by l-fixing reflections until the projection is a multiple of
// l*. Inputs whose orbit invariants forbid that normal form report
// BudgetExceeded.
DiscriminantComponent discriminant_component(const LatticeVector& delta,
                                             const LatticeVector& l,
                                             int budget = 10000);

}  // namespace k3kit
