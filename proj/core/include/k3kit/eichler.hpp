#pragma once

#include "k3kit/isometry.hpp"
#include "k3kit/lattice.hpp"

namespace k3kit {

// Transitivity machinery for sublattices W = U (+) U (+) (definite blocks):
// maps a primitive x supported on W to f1 + (<x,x>/2) f2, where (f1, f2) is
// the basis of the first listed U summand. The word acts only on the W
// coordinates (every generator extends by the identity elsewhere).
//
// w_blocks lists the ambient summand indices of W; the first two must be U
// summands, the rest definite blocks.
IsometryWord eichler_canonicalize(const LatticeVector& x, const std::vector<int>& w_blocks,
                                  int budget = 10000);

}  // namespace k3kit
