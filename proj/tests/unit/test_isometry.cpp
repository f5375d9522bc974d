#include <doctest.h>

#include <array>
#include <map>
#include <random>

#include "k3kit/error.hpp"
#include "k3kit/isometry.hpp"
#include "k3kit/period.hpp"

using namespace k3kit;

namespace {

// Tiny polynomial in the symbols vv = <v,v>, vl = <v,lambda>, ll =
// <lambda,lambda>, m, n: monomial exponent vector -> coefficient. Used to
// check transvection formulas symbolically, independent of any lattice.
using Mono = std::array<int, 5>;
using Poly = std::map<Mono, Rat>;

Poly sym(int idx) { Mono m{}; m[idx] = 1; return {{m, Rat(1)}}; }
Poly constant(const Rat& c) { return {{Mono{}, c}}; }

Poly add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) {
    out[m] += c;
    if (out[m] == 0) out.erase(m);
  }
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m;
      for (int i = 0; i < 5; ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
      if (out[m] == 0) out.erase(m);
    }
  return out;
}

Poly scale(const Poly& a, const Rat& c) { return mul(a, constant(c)); }

// norm of (v + m lambda, m, n') where n' is a polynomial:
//   <v,v> + 2 m vl + m^2 ll + 2 m n'
Poly norm_after(const Poly& nprime, const Poly& v_coeff_of_lambda) {
  Poly vv = sym(0), vl = sym(1), ll = sym(2), m = sym(3);
  Poly vpart = add(vv, add(scale(mul(v_coeff_of_lambda, vl), 2),
                           mul(mul(v_coeff_of_lambda, v_coeff_of_lambda), ll)));
  return add(vpart, scale(mul(m, nprime), 2));
}

}  // namespace

TEST_CASE("corrected transvection preserves the norm symbolically") {
  Poly vv = sym(0), vl = sym(1), ll = sym(2), m = sym(3), n = sym(4);
  // (v,m,n) -> (v + m lambda, m, n - vl - m ll / 2)
  Poly nprime = add(n, add(scale(vl, -1), scale(mul(m, ll), Rat(-1, 2))));
  Poly norm = norm_after(nprime, m);
  Poly original = add(vv, scale(mul(m, n), 2));
  CHECK(norm == original);
}

TEST_CASE("paper-literal transvection fails the isometry gate symbolically") {
  Poly vv = sym(0), vl = sym(1), ll = sym(2), m = sym(3), n = sym(4);
  // (v,m,n) -> (v + 2m lambda, m, n - vl - m ll)
  Poly nprime = add(n, add(scale(vl, -1), scale(mul(m, ll), -1)));
  Poly norm = norm_after(nprime, scale(m, 2));
  Poly original = add(vv, scale(mul(m, n), 2));
  CHECK(norm != original);
  // the defect is 2 m vl + 2 m^2 ll
  Poly defect = add(norm, scale(original, -1));
  Poly expected = add(scale(mul(m, vl), 2), scale(mul(mul(m, m), ll), 2));
  CHECK(defect == expected);
}

TEST_CASE("generators are exact isometries on the K3 lattice") {
  auto lat = Lattice::make("U^3+E8(-1)^2");
  std::mt19937_64 rng(11);
  auto rand_lambda = [&](int u_block) {
    std::vector<Rat> c(lat->rank(), Rat(0));
    const auto& sm = lat->summands()[u_block];
    for (int i = 0; i < lat->rank(); ++i) {
      if (i >= sm.offset && i < sm.offset + 2) continue;
      c[i] = static_cast<int>(rng() % 7) - 3;
    }
    return LatticeVector(lat, c);
  };
  for (int u : lat->u_blocks())
    for (int gen : {1, 2})
      for (int rep = 0; rep < 10; ++rep)
        CHECK(generator_is_isometry(make_transvection(lat, u, gen, rand_lambda(u)), lat));
  CHECK(generator_is_isometry(SignFlip{}, lat));
  CHECK(generator_is_isometry(BlockAutomorphism{"flip_u:0"}, lat));
  CHECK(generator_is_isometry(BlockAutomorphism{"neg_u:1"}, lat));
  CHECK(generator_is_isometry(BlockAutomorphism{"swap_u:0:2"}, lat));
  // a reflection by an actual root
  std::vector<Rat> d(lat->rank(), Rat(0));
  d[0] = 1; d[1] = -1;
  Reflection r;
  for (const auto& x : d) r.root.push_back(rat_num(x));
  CHECK(generator_is_isometry(r, lat));
}

TEST_CASE("transvection fixes e and matches the split-coordinate formula") {
  auto lat = Lattice::make("U+E8(-1)+U");
  auto us = lat->u_blocks();
  int last_u = us.back();
  const auto& sm = lat->summands()[last_u];
  std::vector<Rat> lam(lat->rank(), Rat(0));
  lam[2] = 1; lam[5] = -2;  // inside the E8 block
  Generator tv = make_transvection(lat, last_u, 2, LatticeVector(lat, lam));

  // e = (0,...,0,0,1) is fixed
  LatticeVector e = LatticeVector::basis(lat, sm.offset + 1);
  CHECK(apply_generator(tv, e) == e);

  // lambda = 0 is the identity
  Generator tv0 = make_transvection(lat, last_u, 2, LatticeVector::zero(lat));
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Rat> c(lat->rank());
    for (auto& x : c) x = static_cast<int>(rng() % 11) - 5;
    LatticeVector v(lat, c);
    CHECK(apply_generator(tv0, v) == v);
    // exact split-coordinate formula
    LatticeVector img = apply_generator(tv, v);
    Rat m = v[sm.offset];
    LatticeVector lamv(lat, lam);
    Rat expected_n = v[sm.offset + 1] - pair_value(v, lamv) - m * norm_value(lamv) / 2;
    CHECK(img[sm.offset] == m);
    CHECK(img[sm.offset + 1] == expected_n);
    for (int i = 0; i < lat->rank(); ++i) {
      if (i == sm.offset || i == sm.offset + 1) continue;
      CHECK(img[i] == v[i] + m * lam[i]);
    }
  }
}

TEST_CASE("word matrices are exact lattice isometries") {
  auto lat = Lattice::make("U^2+E8(-1)");
  IsometryWord w(lat);
  std::vector<Rat> lam(lat->rank(), Rat(0));
  lam[0] = 1; lam[1] = -1; lam[4] = 2;
  w.push(make_transvection(lat, 1, 2, LatticeVector(lat, lam)));
  w.push(BlockAutomorphism{"swap_u:0:1"});
  w.push(SignFlip{});
  std::vector<Rat> root(lat->rank(), Rat(0));
  root[0] = 1; root[1] = -1;
  Reflection r;
  for (const auto& x : root) r.root.push_back(rat_num(x));
  w.push(r);
  auto m = word_matrix(w);
  CHECK(is_lattice_isometry(lat, m));
}
