#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "k3kit/lattice.hpp"

namespace k3kit {

// Norm plus exact pairing conditions; coordinate_bound turns on a brute-force
// box scan when the structured reductions do not apply.
struct RootConstraint {
  Int norm = -2;
  std::vector<std::pair<LatticeVector, Int>> pairings;
  std::optional<std::int64_t> coordinate_bound;
};

// Every integral vector satisfying the constraint, deduplicated, in ascending
// lexicographic coordinate order. Finiteness must be guaranteed by the
// constraint (definite lattice, pairing conditions with definite kernel, a
// rank-2 hyperbolic special case, or an explicit box).
std::vector<LatticeVector> enumerate_roots(const LatticePtr& lattice,
                                           const RootConstraint& constraint,
                                           int threads = 0);

// --- definite kernels -------------------------------------------------------

// Positive-definite integer quadratic form; callback sees integer coordinates
// x (excluding x = 0 only if skip_zero) with Q(x) <= bound, plus the exact
// value. Bounds are float-pruned but membership is decided exactly.
void for_each_definite_vector(
    const std::vector<std::vector<std::int64_t>>& gram_posdef,
    std::int64_t bound,
    const std::function<void(const std::vector<std::int64_t>&, std::int64_t)>& fn);

// Histogram hist[m] = #{x : Q(x) = m} for 0 <= m <= max_norm (includes x = 0).
std::vector<std::int64_t> count_by_norm(
    const std::vector<std::vector<std::int64_t>>& gram_posdef,
    std::int64_t max_norm, int threads = 0);

// All integer x with Q(x - center) = target, exact rational arithmetic at the
// accept step. Used for coset fibers and closest-vector searches.
std::vector<std::vector<Int>> enumerate_shifted(
    const std::vector<std::vector<std::int64_t>>& gram_posdef,
    const std::vector<Rat>& center, const Rat& target);

// Integer x minimizing Q(x - center); ties broken lexicographically.
std::vector<Int> closest_vector(
    const std::vector<std::vector<std::int64_t>>& gram_posdef,
    const std::vector<Rat>& center, Rat* dist_out = nullptr);

// Exact positive-definiteness via leading principal minors.
bool is_positive_definite_exact(const std::vector<std::vector<Int>>& m);

}  // namespace k3kit
