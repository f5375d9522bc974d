#include "k3kit/eichler.hpp"

#include <algorithm>

#include "k3kit/error.hpp"

namespace k3kit {

namespace {

struct Workspace {
  LatticePtr lat;
  std::vector<int> w_blocks;
  int bf, bg;             // f and g summand indices
  int f1, f2, g1, g2;     // coordinate indices
  std::vector<int> rest;  // coordinates of the definite part of W
  LatticeVector cur;
  IsometryWord word;
  int moves = 0;
  int budget;

  Int a1() const { return rat_num(cur[f1]); }
  Int b1() const { return rat_num(cur[f2]); }
  Int a2() const { return rat_num(cur[g1]); }
  Int b2() const { return rat_num(cur[g2]); }

  void apply(Generator g) {
    cur = apply_generator(g, cur);
    word.push(std::move(g));
    if (++moves > budget) raise("BudgetExceeded", "eichler canonicalization move budget");
  }

  // transvection E(e_gen of `block`, lambda) with lambda given by sparse
  // coordinate assignments
  void tv(int block, int gen, const std::vector<std::pair<int, Int>>& lambda_coords) {
    std::vector<Rat> lam(lat->rank(), Rat(0));
    for (const auto& [idx, val] : lambda_coords) lam[idx] = Rat(val);
    apply(make_transvection(lat, block, gen, LatticeVector(lat, std::move(lam))));
  }

  void flip_f() { apply(BlockAutomorphism{"flip_u:" + std::to_string(bf)}); }
  void neg_f() { apply(BlockAutomorphism{"neg_u:" + std::to_string(bf)}); }
  void swap_fg() {
    apply(BlockAutomorphism{"swap_u:" + std::to_string(bf) + ":" + std::to_string(bg)});
  }

  // rest-part pairings with basis vectors: (G x)_i restricted to rest coords
  std::vector<Int> rest_pairings() const {
    std::vector<Int> out;
    for (int i : rest) {
      Rat p = pair_value(LatticeVector::basis(lat, i), cur);
      out.push_back(rat_num(p));
    }
    return out;
  }

  bool rest_zero() const {
    return std::all_of(rest.begin(), rest.end(),
                       [&](int i) { return cur[i] == 0; });
  }
};

Int abs_int(const Int& x) { return x < 0 ? -x : x; }

// floor division
Int fdiv(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

IsometryWord eichler_canonicalize(const LatticeVector& x, const std::vector<int>& w_blocks,
                                  int budget) {
  const auto& lat = x.lattice();
  if (w_blocks.size() < 2) raise("MalformedDescriptor", "need at least two W summands");
  Workspace ws;
  ws.lat = lat;
  ws.w_blocks = w_blocks;
  ws.bf = w_blocks[0];
  ws.bg = w_blocks[1];
  const auto& sf = lat->summands().at(ws.bf);
  const auto& sg = lat->summands().at(ws.bg);
  if (sf.kind != SummandKind::U || sg.kind != SummandKind::U)
    raise("NotHyperbolicBlock", "first two W summands must be U");
  ws.f1 = sf.offset; ws.f2 = sf.offset + 1;
  ws.g1 = sg.offset; ws.g2 = sg.offset + 1;
  for (size_t k = 2; k < w_blocks.size(); ++k) {
    const auto& sm = lat->summands().at(w_blocks[k]);
    if (sm.kind == SummandKind::U)
      raise("NotHyperbolicBlock", "definite W summands expected after the two U blocks");
    for (int i = 0; i < sm.rank; ++i) ws.rest.push_back(sm.offset + i);
  }
  // support check
  {
    std::vector<bool> in_w(lat->rank(), false);
    for (int b : w_blocks) {
      const auto& sm = lat->summands().at(b);
      for (int i = 0; i < sm.rank; ++i) in_w[sm.offset + i] = true;
    }
    for (int i = 0; i < lat->rank(); ++i)
      if (!in_w[i] && x[i] != 0)
        raise("MalformedDescriptor", "vector not supported on the W summands");
  }
  if (!is_primitive(x)) raise("NotPrimitive", "eichler canonicalization needs a primitive vector");

  ws.cur = x;
  ws.word = IsometryWord(lat);
  ws.budget = budget;
  Rat t = norm_value(x);

  // Stage 1: drive |a1| to 1.
  while (true) {
    if (ws.a1() == 0 && ws.b1() == 0 && ws.a2() == 0 && ws.b2() == 0) {
      // x lives in the definite part and is primitive there; pull content 1
      // into b1 via a gen=1 transvection (a1 -= <v,lambda>)
      auto pairings = ws.rest_pairings();
      std::vector<Int> coeff;
      Int g = ext_gcd_vector(pairings, coeff);
      if (g != 1)
        raise("InternalError", "definite-part pairings have content " + g.str());
      std::vector<std::pair<int, Int>> lam;
      for (size_t i = 0; i < ws.rest.size(); ++i)
        if (coeff[i] != 0) lam.push_back({ws.rest[i], coeff[i]});
      ws.tv(ws.bf, 1, lam);  // a1 -> a1 - 1 = -1
    }
    if (ws.a1() == 0 && ws.b1() == 0) ws.swap_fg();
    if (ws.a1() == 0) ws.flip_f();
    if (ws.a1() < 0) ws.neg_f();

    Int a = ws.a1();
    if (a == 1) break;

    // reduce the g-coordinates and the definite part modulo a1
    if (ws.a2() != 0) {
      Int k = -fdiv(ws.a2(), a);
      if (k != 0) ws.tv(ws.bf, 2, {{ws.g1, k}});  // a2 += k a1 (b1 -= k b2)
    }
    if (ws.b2() != 0) {
      Int k = -fdiv(ws.b2(), a);
      if (k != 0) ws.tv(ws.bf, 2, {{ws.g2, k}});  // b2 += k a1 (b1 -= k a2)
    }
    {
      std::vector<std::pair<int, Int>> lam;
      for (int i : ws.rest) {
        Int v = rat_num(ws.cur[i]);
        Int k = -fdiv(v, a);
        if (k != 0) lam.push_back({i, k});
      }
      if (!lam.empty()) ws.tv(ws.bf, 2, lam);  // v += a1 lambda
    }

    // now a2, b2, v-coords all lie in [0, a1); Euclid a1 against a nonzero one
    Int a2v = ws.a2(), b2v = ws.b2();
    if (a2v != 0) {
      Int k = fdiv(a, a2v);
      ws.tv(ws.bf, 1, {{ws.g2, k}});  // a1 -= k a2 (side effect on b2 only)
      continue;
    }
    if (b2v != 0) {
      Int k = fdiv(a, b2v);
      ws.tv(ws.bf, 1, {{ws.g1, k}});  // a1 -= k b2
      continue;
    }
    if (!ws.rest_zero()) {
      // materialize the definite content in b2 (linear since a2 = 0), then
      // Euclid a1 against it
      auto pairings = ws.rest_pairings();
      std::vector<Int> coeff;
      Int g = ext_gcd_vector(pairings, coeff);
      std::vector<std::pair<int, Int>> lam;
      for (size_t i = 0; i < ws.rest.size(); ++i)
        if (coeff[i] != 0) lam.push_back({ws.rest[i], -coeff[i]});
      ws.tv(ws.bg, 2, lam);  // b2 -= <v,lambda> = +g  (a2 stays 0)
      Int k = fdiv(a, ws.b2());
      ws.tv(ws.bf, 1, {{ws.g1, k}});  // a1 -= k b2
      continue;
    }
    // state (a1, b1, 0, 0, 0) with gcd(a1, b1) = 1: expose b1 in the a2 slot
    // (a2 -= <x, f1> = b1, no other effect since b2 = 0), then keep reducing
    ws.tv(ws.bg, 1, {{ws.f1, 1}});
  }

  // Stage 2: a1 = +-1; make it +1 and clear everything else.
  if (ws.a1() == -1) ws.neg_f();
  {
    Int k = -ws.a2();
    if (k != 0) ws.tv(ws.bf, 2, {{ws.g1, k}});
  }
  {
    Int k = -ws.b2();
    if (k != 0) ws.tv(ws.bf, 2, {{ws.g2, k}});
  }
  {
    std::vector<std::pair<int, Int>> lam;
    for (int i : ws.rest) {
      Int v = rat_num(ws.cur[i]);
      if (v != 0) lam.push_back({i, -v});
    }
    if (!lam.empty()) ws.tv(ws.bf, 2, lam);
  }
  // a1 = 1, rest zero: norm forces b1 = t/2
  if (!(ws.a1() == 1 && ws.a2() == 0 && ws.b2() == 0 && ws.rest_zero() &&
        Rat(2) * Rat(ws.b1()) == t))
    raise("InternalError", "eichler canonical form not reached");
  return ws.word;
}

}  // namespace k3kit
