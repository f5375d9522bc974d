#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "k3kit/numeric.hpp"

namespace k3kit {

enum class SummandKind { U, E8Neg, TwoN };

struct Summand {
  SummandKind kind;
  std::int64_t n = 0;  // TwoN block is the rank-1 lattice <-2n>
  int offset = 0;      // first coordinate of the block
  int rank = 0;
};

// Even lattice presented by an integer Gram matrix, assembled block-diagonally
// from U, E8(-1) and <-2n> summands. Immutable after construction.
class Lattice {
 public:
  static std::shared_ptr<const Lattice> make(const std::string& descriptor);

  int rank() const { return rank_; }
  std::pair<int, int> signature() const { return signature_; }
  const std::string& label() const { return label_; }
  const std::vector<Summand>& summands() const { return summands_; }
  const std::vector<std::vector<std::int64_t>>& gram() const { return gram_; }
  std::int64_t gram(int i, int j) const { return gram_[i][j]; }
  const Int& det() const { return det_; }

  bool same_as(const Lattice& other) const;

  // indices of U summands, in descriptor order
  std::vector<int> u_blocks() const;
  bool is_negative_definite() const;

 private:
  Lattice() = default;

  std::vector<std::vector<std::int64_t>> gram_;
  std::vector<Summand> summands_;
  std::string label_;
  int rank_ = 0;
  std::pair<int, int> signature_{0, 0};
  Int det_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

// Exact coordinate tuple relative to a lattice basis. Rational coordinates are
// allowed; root and orbit operations demand integrality.
class LatticeVector {
 public:
  LatticeVector() = default;
  LatticeVector(LatticePtr lattice, std::vector<Rat> coords);

  static LatticeVector zero(LatticePtr lattice);
  static LatticeVector basis(LatticePtr lattice, int i);

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Rat>& coords() const { return coords_; }
  const Rat& operator[](int i) const { return coords_[i]; }
  int size() const { return static_cast<int>(coords_.size()); }

  bool integral() const;
  bool is_zero() const;

  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector operator-() const;
  LatticeVector scaled(const Rat& c) const;

  bool operator==(const LatticeVector& o) const;
  bool operator<(const LatticeVector& o) const;  // lexicographic on coords

  std::string to_string() const;

 private:
  LatticePtr lattice_;
  std::vector<Rat> coords_;
};

// v^T . gram . w, exactly
Rat pair_value(const LatticeVector& v, const LatticeVector& w);
Rat norm_value(const LatticeVector& v);

// T_delta(v) = v + <v,delta> delta, requires <delta,delta> = -2
LatticeVector reflect(const LatticeVector& delta, const LatticeVector& v);

// gcd of coordinates is 1; rejects the zero vector
bool is_primitive(const LatticeVector& v);

struct ComplementResult {
  LatticePtr lattice;  // <-2n> (+) remaining blocks
  // rows: coordinates of the complement basis inside the ambient lattice,
  // first row is l* = e1 - n e2
  std::vector<std::vector<Int>> embedding;
  LatticeVector l_star;  // in ambient coordinates
};

// Orthogonal complement of a primitive l = e1 + n e2 (norm 2n > 0) lying in a
// single U summand of the ambient lattice.
ComplementResult orthogonal_complement(const LatticeVector& l);

}  // namespace k3kit
