#include <doctest.h>

#include <random>

#include "k3kit/error.hpp"
#include "k3kit/lattice.hpp"

using namespace k3kit;

TEST_CASE("hyperbolic plane U") {
  auto u = Lattice::make("U");
  CHECK(u->rank() == 2);
  CHECK(u->signature() == std::pair<int, int>{1, 1});
  CHECK(u->gram(0, 0) == 0);
  CHECK(u->gram(0, 1) == 1);
  CHECK(u->gram(1, 0) == 1);
  CHECK(u->gram(1, 1) == 0);
  CHECK(u->det() == -1);
}

TEST_CASE("K3 lattice U^3+E8(-1)^2") {
  auto k3 = Lattice::make("U^3+E8(-1)^2");
  CHECK(k3->rank() == 22);
  CHECK(k3->signature() == std::pair<int, int>{3, 19});
  CHECK(k3->det() == -1);
  // even: all diagonal entries even
  for (int i = 0; i < 22; ++i) CHECK(k3->gram(i, i) % 2 == 0);
}

TEST_CASE("E8(-1) block is even unimodular of rank 8") {
  auto e8 = Lattice::make("E8(-1)");
  CHECK(e8->rank() == 8);
  CHECK(e8->signature() == std::pair<int, int>{0, 8});
  CHECK(e8->det() == 1);
  for (int i = 0; i < 8; ++i) CHECK(e8->gram(i, i) == -2);
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_WITH_AS(Lattice::make(""), doctest::Contains("EmptyDescriptor"), Error);
  CHECK_THROWS_AS(Lattice::make("Q"), Error);
  CHECK_THROWS_AS(Lattice::make("U^"), Error);
  CHECK_THROWS_AS(Lattice::make("U+"), Error);
  CHECK_THROWS_AS(Lattice::make("<3>"), Error);
  CHECK_THROWS_AS(Lattice::make("<-3>"), Error);
  auto two_n = Lattice::make("<-4>");
  CHECK(two_n->gram(0, 0) == -4);
  CHECK(two_n->label() == "<-4>");
}

TEST_CASE("pairing in U") {
  auto u = Lattice::make("U");
  LatticeVector e1 = LatticeVector::basis(u, 0), e2 = LatticeVector::basis(u, 1);
  CHECK(pair_value(e1, e2) == 1);
  CHECK(pair_value(e1, LatticeVector::zero(u)) == 0);
  LatticeVector v = e1 - e2;
  CHECK(norm_value(v) == -2);
}

TEST_CASE("pairing rejects mismatched lattices") {
  auto u = Lattice::make("U");
  auto u2 = Lattice::make("U^2");
  CHECK_THROWS_WITH_AS(pair_value(LatticeVector::basis(u, 0), LatticeVector::basis(u2, 0)),
                       doctest::Contains("LatticeMismatch"), Error);
}

TEST_CASE("reflection basics") {
  auto u = Lattice::make("U");
  LatticeVector d = LatticeVector::basis(u, 0) - LatticeVector::basis(u, 1);
  CHECK(reflect(d, d) == -d);
  // fixed hyperplane
  LatticeVector w = LatticeVector::basis(u, 0) + LatticeVector::basis(u, 1);
  CHECK(pair_value(w, d) == 0);
  CHECK(reflect(d, w) == w);
  // direct arithmetic: delta = (1,-1), v = (1,0) -> (0,1)
  LatticeVector v = LatticeVector::basis(u, 0);
  LatticeVector img = reflect(d, v);
  CHECK(img == LatticeVector::basis(u, 1));
  CHECK_THROWS_WITH_AS(reflect(w, v), doctest::Contains("NotRoot"), Error);
}

TEST_CASE("reflection is an involution and preserves the form") {
  auto lat = Lattice::make("U^2+E8(-1)");
  std::mt19937_64 rng(7);
  auto rand_vec = [&]() {
    std::vector<Rat> c(lat->rank());
    for (auto& x : c) x = static_cast<int>(rng() % 9) - 4;
    return LatticeVector(lat, c);
  };
  // gather a few roots to reflect by
  std::vector<LatticeVector> roots;
  for (int tries = 0; tries < 500 && roots.size() < 5; ++tries) {
    LatticeVector v = rand_vec();
    if (norm_value(v) == -2) roots.push_back(v);
  }
  REQUIRE(!roots.empty());
  for (const auto& d : roots) {
    for (int i = 0; i < 50; ++i) {
      LatticeVector a = rand_vec(), b = rand_vec();
      CHECK(reflect(d, reflect(d, a)) == a);
      CHECK(pair_value(reflect(d, a), reflect(d, b)) == pair_value(a, b));
    }
  }
}

TEST_CASE("primitivity") {
  auto u = Lattice::make("U");
  CHECK(is_primitive(LatticeVector::basis(u, 0)));
  LatticeVector v(u, {Rat(2), Rat(4)});
  CHECK(!is_primitive(v));
  CHECK_THROWS_WITH_AS(is_primitive(LatticeVector::zero(u)), doctest::Contains("ZeroVector"),
                       Error);
}

TEST_CASE("orthogonal complement of l = e1 + n e2") {
  auto k3 = Lattice::make("U^3+E8(-1)^2");
  SUBCASE("n = 2") {
    LatticeVector l(k3, [&] {
      std::vector<Rat> c(22, Rat(0));
      c[0] = 1; c[1] = 2;
      return c;
    }());
    auto comp = orthogonal_complement(l);
    CHECK(comp.lattice->label() == "<-4>+U+U+E8(-1)+E8(-1)");
    CHECK(comp.lattice->rank() == 21);
    CHECK(norm_value(comp.l_star) == -4);
    CHECK(pair_value(comp.l_star, l) == 0);
    // every embedded basis vector pairs to zero with l
    for (const auto& row : comp.embedding) {
      std::vector<Rat> c(22);
      for (int i = 0; i < 22; ++i) c[i] = row[i];
      CHECK(pair_value(LatticeVector(k3, c), l) == 0);
    }
  }
  SUBCASE("isotropic l rejected") {
    CHECK_THROWS_WITH_AS(orthogonal_complement(LatticeVector::basis(k3, 0)),
                         doctest::Contains("NotPositiveNorm"), Error);
  }
  SUBCASE("imprimitive l rejected") {
    LatticeVector l(k3, [&] {
      std::vector<Rat> c(22, Rat(0));
      c[0] = 2; c[1] = 2;
      return c;
    }());
    CHECK_THROWS_WITH_AS(orthogonal_complement(l), doctest::Contains("NotPrimitive"), Error);
  }
  SUBCASE("l outside a U summand rejected") {
    LatticeVector l(k3, [&] {
      std::vector<Rat> c(22, Rat(0));
      c[0] = 1; c[1] = 1; c[2] = 1; c[3] = 1;
      return c;
    }());
    CHECK_THROWS_WITH_AS(orthogonal_complement(l), doctest::Contains("NotInHyperbolicSummand"),
                         Error);
  }
}
