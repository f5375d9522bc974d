#pragma once

#include <string>
#include <variant>
#include <vector>

#include "k3kit/lattice.hpp"

namespace k3kit {

// T_root(x) = x + <x,root> root, with <root,root> = -2
struct Reflection {
  std::vector<Int> root;
};

// Eichler map E(e, lambda) attached to the isotropic generator e of one U
// summand (gen picks which of the two basis vectors plays e) and lambda
// supported outside that summand:
//   x -> x + <x,e> lambda - <x,lambda> e - (<lambda,lambda>/2) <x,e> e
// Fixes e; in split coordinates x = (v, m, n) this is
//   (v, m, n) -> (v + m lambda, m, n - <v,lambda> - m <lambda,lambda>/2).
struct Transvection {
  int u_block = 0;
  int gen = 2;  // 1 or 2
  std::vector<Int> lambda;
};

struct SignFlip {};

// Named coordinate automorphisms: "flip_u:<i>" swaps the two basis vectors of
// U summand i; "swap_u:<i>:<j>" exchanges two U summands.
struct BlockAutomorphism {
  std::string name;
};

using Generator = std::variant<Reflection, Transvection, SignFlip, BlockAutomorphism>;

LatticeVector apply_generator(const Generator& g, const LatticeVector& v);

// Ordered word of generators over a fixed ambient lattice; replay applies the
// generators first-to-last.
class IsometryWord {
 public:
  IsometryWord() = default;
  explicit IsometryWord(LatticePtr ambient) : ambient_(std::move(ambient)) {}

  const LatticePtr& ambient() const { return ambient_; }
  const std::vector<Generator>& generators() const { return gens_; }
  bool empty() const { return gens_.empty(); }
  size_t size() const { return gens_.size(); }

  void push(Generator g) { gens_.push_back(std::move(g)); }
  void append(const IsometryWord& other);

  LatticeVector apply(const LatticeVector& v) const;

 private:
  LatticePtr ambient_;
  std::vector<Generator> gens_;
};

// Exact check: the generator preserves the Gram matrix on the basis.
bool generator_is_isometry(const Generator& g, const LatticePtr& lattice);

// Factory with validity checks (lambda integral, supported off the U block).
Generator make_transvection(const LatticePtr& lattice, int u_block, int gen,
                            const LatticeVector& lambda);

}  // namespace k3kit
