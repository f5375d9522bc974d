#include <algorithm>

#include "k3kit/eichler.hpp"
#include "k3kit/error.hpp"
#include "k3kit/orbit.hpp"

namespace k3kit {

namespace {

struct K3Layout {
  LatticePtr lat;
  Int n;                       // <l,l> = 2n
  int e1 = 0, e2 = 1;          // first U coordinates
  int f1, f2, g1, g2;          // second and third U coordinates
  std::vector<int> w_blocks;   // summand indices of W = U (+) U (+) E8 (+) E8
};

K3Layout check_k3_inputs(const LatticeVector& delta, const LatticeVector& l) {
  const auto& lat = delta.lattice();
  const auto& sums = lat->summands();
  bool shape = sums.size() == 5 && sums[0].kind == SummandKind::U &&
               sums[1].kind == SummandKind::U && sums[2].kind == SummandKind::U &&
               sums[3].kind == SummandKind::E8Neg && sums[4].kind == SummandKind::E8Neg;
  if (!shape)
    raise("UnsupportedLattice", "discriminant components live in U^3+E8(-1)^2");
  if (!l.lattice()->same_as(*lat)) raise("LatticeMismatch", "l and delta lattices differ");
  if (!l.integral()) raise("BadPolarization", "l must be integral");
  for (int i = 2; i < lat->rank(); ++i)
    if (l[i] != 0) raise("BadPolarization", "l must lie in the first U summand");
  if (l[0] != 1) raise("BadPolarization", "expected l = e1 + n e2");
  Rat nn = norm_value(l);
  if (!(nn > 0)) raise("BadPolarization", "need <l,l> = 2n > 0");
  if (!delta.integral()) raise("NotRoot", "delta must be integral");
  if (norm_value(delta) != -2) raise("NotRoot", "delta must have norm -2");

  K3Layout k;
  k.lat = lat;
  k.n = rat_num(l[1]);
  k.f1 = sums[1].offset; k.f2 = sums[1].offset + 1;
  k.g1 = sums[2].offset; k.g2 = sums[2].offset + 1;
  k.w_blocks = {1, 2, 3, 4};
  return k;
}

// W-part (everything off the first U)
LatticeVector mu_part(const K3Layout& k, const LatticeVector& v) {
  std::vector<Rat> c(v.coords());
  c[0] = 0;
  c[1] = 0;
  return LatticeVector(k.lat, std::move(c));
}

// l*-coefficient of the projection onto l-perp: beta = m1/2 - m2/(2n)
Rat beta_of(const K3Layout& k, const LatticeVector& v) {
  return v[0] / 2 - v[1] / (2 * Rat(k.n));
}

Int content_of(const LatticeVector& v) {
  Int g = 0;
  for (const auto& x : v.coords()) g = gcd_int(g, rat_num(x));
  return g;
}

// kappa = k0 l* + g1 + A g2 + x f2 + y f1 with A = n k0^2 - 1 - x y (norm -2);
// `mirrored` swaps the roles of the f and g planes
LatticeVector make_kappa(const K3Layout& k, const Int& k0, const Int& x, const Int& y,
                         bool mirrored) {
  std::vector<Rat> c(k.lat->rank(), Rat(0));
  c[0] = Rat(k0);
  c[1] = Rat(-k0 * k.n);
  Int a = k.n * k0 * k0 - 1 - x * y;
  int i1 = mirrored ? k.f1 : k.g1, i2 = mirrored ? k.f2 : k.g2;
  int j1 = mirrored ? k.g1 : k.f1, j2 = mirrored ? k.g2 : k.f2;
  c[i1] = 1;
  c[i2] = Rat(a);
  c[j2] += Rat(x);
  c[j1] += Rat(y);
  return LatticeVector(k.lat, std::move(c));
}

bool is_canonical_mu(const K3Layout& k, const LatticeVector& mu, const Int& content) {
  // k (f1 + (t/2) f2) with t = <mu/k, mu/k>
  for (int i = 0; i < k.lat->rank(); ++i) {
    if (i == k.f1 || i == k.f2) continue;
    if (mu[i] != 0) return false;
  }
  return mu[k.f1] == Rat(content);
}

}  // namespace

DiscriminantComponent discriminant_component(const LatticeVector& delta,
                                             const LatticeVector& l, int budget) {
  K3Layout k = check_k3_inputs(delta, l);

  DiscriminantComponent out;
  if (pair_value(delta, l) == 0) {
    out.tag = "perp-root";
    out.certificate = ReductionCertificate{delta, IsometryWord(k.lat), delta, 0};
    out.lstar_coefficient = beta_of(k, delta);  // projection is beta l* + mu with mu in W
    return out;
  }

  // reachability invariants: eta = 2n * Pr(delta) is integral with l*-part
  // B = 2n beta; the target B' l* must satisfy B'^2 = B^2 - 2n s and
  // content(eta) = |B'|
  {
    LatticeVector mu0 = mu_part(k, delta);
    Rat s0 = norm_value(mu0);
    Rat b0 = beta_of(k, delta) * 2 * Rat(k.n);
    Rat target2 = b0 * b0 - 2 * Rat(k.n) * s0;
    Int t2 = rat_num(target2);
    if (!is_integer(target2) || t2 < 0)
      raise("InternalError", "projection norm bookkeeping failed");
    Int root = boost::multiprecision::sqrt(t2);
    LatticeVector eta = mu0.scaled(Rat(2 * k.n));
    std::vector<Rat> ec(eta.coords());
    // eta's l*-part recorded on the first-U coordinates as B l* = (B, -nB)
    ec[0] = b0;
    ec[1] = -b0 * Rat(k.n);
    LatticeVector eta_full(k.lat, std::move(ec));
    Int cont = content_of(eta_full);
    if (root * root != t2 || cont != root)
      raise("BudgetExceeded",
            "orbit invariants obstruct the l*-normal form (content " + cont.str() +
                " vs required " + root.str() + ")");
  }

  LatticeVector cur = delta;
  IsometryWord word(k.lat);
  int steps = 0;

  auto apply_and_log = [&](const Generator& g) {
    cur = apply_generator(g, cur);
    word.push(g);
    if (++steps > budget) raise("BudgetExceeded", "discriminant reduction move budget");
  };

  while (true) {
    LatticeVector mu = mu_part(k, cur);
    if (mu.is_zero()) break;
    if (steps > budget) raise("BudgetExceeded", "discriminant reduction move budget");

    Int cont = content_of(mu);
    if (!is_canonical_mu(k, mu, cont)) {
      LatticeVector mu_prim = mu.scaled(Rat(1, cont));
      IsometryWord canon = eichler_canonicalize(mu_prim, k.w_blocks, budget - steps);
      for (const auto& g : canon.generators()) apply_and_log(g);
      mu = mu_part(k, cur);
      cont = content_of(mu);
    }

    Rat s = norm_value(mu);
    Rat beta = beta_of(k, cur);

    struct Candidate {
      Rat s_new;
      Rat beta_abs;
      LatticeVector kappa;
      bool zero_mu;
    };
    std::vector<Candidate> cands;
    for (int mirrored = 0; mirrored < 2; ++mirrored) {
      for (Int k0 = 1; k0 <= 3; ++k0) {
        for (Int x = -2; x <= 2; ++x) {
          for (Int y = -2; y <= 2; ++y) {
            LatticeVector kappa = make_kappa(k, k0, x, y, mirrored != 0);
            Rat c = pair_value(cur, kappa);
            if (c == 0) continue;
            LatticeVector next = cur + kappa.scaled(c);
            LatticeVector mu2 = mu_part(k, next);
            Candidate cand;
            cand.s_new = norm_value(mu2);
            Rat b2 = beta_of(k, next);
            cand.beta_abs = b2 < 0 ? -b2 : b2;
            cand.kappa = kappa;
            cand.zero_mu = mu2.is_zero();
            cands.push_back(std::move(cand));
          }
        }
      }
    }

    const Candidate* best = nullptr;
    for (const auto& cand : cands)
      if (cand.zero_mu) { best = &cand; break; }
    if (!best && s > 0) {
      for (const auto& cand : cands) {
        if (!(cand.s_new >= 0 && cand.s_new < s)) continue;
        if (!best || cand.s_new < best->s_new ||
            (cand.s_new == best->s_new && cand.beta_abs < best->beta_abs))
          best = &cand;
      }
    } else if (!best && s < 0) {
      for (const auto& cand : cands) {
        if (!(cand.s_new > s)) continue;
        bool cand_nonneg = cand.s_new >= 0;
        bool best_nonneg = best && best->s_new >= 0;
        if (!best) { best = &cand; continue; }
        if (cand_nonneg && !best_nonneg) { best = &cand; continue; }
        if (cand_nonneg == best_nonneg && cand.s_new < best->s_new) best = &cand;
      }
    } else if (!best) {  // s == 0 with mu != 0: mixing move
      for (const auto& cand : cands) {
        if (!(cand.s_new > 0)) continue;
        if (!best || cand.s_new < best->s_new) best = &cand;
      }
    }
    if (!best)
      raise("BudgetExceeded", "no admissible reflection found (search bound hit)");

    Reflection refl;
    refl.root.resize(k.lat->rank());
    for (int i = 0; i < k.lat->rank(); ++i) refl.root[i] = rat_num(best->kappa[i]);
    apply_and_log(refl);
  }

  out.tag = "lstar-component";
  out.certificate = ReductionCertificate{delta, word, cur, steps};
  out.lstar_coefficient = beta_of(k, cur);
  if (!certificate_replays(out.certificate))
    raise("InternalError", "discriminant certificate replay mismatch");
  // final projection must be exactly beta l*
  LatticeVector residue = mu_part(k, cur);
  if (!residue.is_zero()) raise("InternalError", "nonzero W-part after reduction");
  return out;
}

}  // namespace k3kit
