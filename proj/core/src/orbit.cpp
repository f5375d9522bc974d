#include "k3kit/orbit.hpp"

#include <algorithm>

#include "k3kit/enumerate.hpp"
#include "k3kit/error.hpp"

namespace k3kit {

namespace {

struct Split {
  int u_block = -1;  // summand index of the distinguished U (last U)
  int m_idx = -1;    // coordinate of u1 (the m slot)
  int n_idx = -1;    // coordinate of u2 (the n slot)
};

Split distinguished_u(const LatticePtr& lat) {
  Split s;
  auto us = lat->u_blocks();
  if (us.empty()) raise("NoUsableIsotropic", "lattice has no U summand");
  s.u_block = us.back();
  s.m_idx = lat->summands()[s.u_block].offset;
  s.n_idx = s.m_idx + 1;
  return s;
}

LatticeVector ints_to_vector(const LatticePtr& lat, const std::vector<Int>& v) {
  std::vector<Rat> c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = v[i];
  return LatticeVector(lat, std::move(c));
}

std::vector<Int> vector_to_ints(const LatticeVector& v) {
  std::vector<Int> out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = rat_num(v[i]);
  return out;
}

// isotropic pair (E, F) in the sublattice "avoid != block", with <E,F> = 1 and
// <E,v> not an integer; nullopt when no such pair can be built
struct IsoPair {
  LatticeVector e, f;
};

std::optional<IsoPair> nonintegral_isotropic_pair(const LatticeVector& v, int avoid_block) {
  const auto& lat = v.lattice();
  // U summands first: <u1, v> = coord at n_idx, <u2, v> = coord at m_idx
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    if (static_cast<int>(s) == avoid_block) continue;
    const auto& sm = lat->summands()[s];
    if (sm.kind != SummandKind::U) continue;
    LatticeVector u1 = LatticeVector::basis(lat, sm.offset);
    LatticeVector u2 = LatticeVector::basis(lat, sm.offset + 1);
    if (!is_integer(v[sm.offset + 1])) return IsoPair{u1, u2};  // <u1,v> = v[o+1]
    if (!is_integer(v[sm.offset])) return IsoPair{u2, u1};
  }
  // otherwise look for a definite-block vector pairing non-integrally
  int host_u = -1;
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    if (static_cast<int>(s) == avoid_block) continue;
    if (lat->summands()[s].kind == SummandKind::U) { host_u = static_cast<int>(s); break; }
  }
  if (host_u < 0) return std::nullopt;
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    if (static_cast<int>(s) == avoid_block) continue;
    const auto& sm = lat->summands()[s];
    if (sm.kind == SummandKind::U) continue;
    for (int i = 0; i < sm.rank; ++i) {
      LatticeVector w = LatticeVector::basis(lat, sm.offset + i);
      Rat p = pair_value(w, v);
      if (is_integer(p)) continue;
      // E = w + u1 - (<w,w>/2) u2 is isotropic and pairs 1 with F = u2
      const auto& host = lat->summands()[host_u];
      LatticeVector u1 = LatticeVector::basis(lat, host.offset);
      LatticeVector u2 = LatticeVector::basis(lat, host.offset + 1);
      Rat half = norm_value(w) / 2;
      LatticeVector e = w + u1 + u2.scaled(-half);
      return IsoPair{e, u2};
    }
  }
  return std::nullopt;
}

// mu = m F + n E with |<v-mu, v-mu> - x| < 1, requires <E,v> not integral
LatticeVector norm_shift_from_pair(const IsoPair& pair, const LatticeVector& v, const Rat& x) {
  Rat a = pair_value(pair.e, v);
  Rat b = pair_value(pair.f, v);
  Int m = rat_round(a);
  if (Rat(m) == a) m += 1;  // guard; a is non-integral by construction
  Rat t = x - norm_value(v) + 2 * a * b;
  Rat n_exact = b - t / (2 * (a - Rat(m)));
  Int n = rat_round(n_exact);
  return pair.f.scaled(Rat(m)) + pair.e.scaled(Rat(n));
}

}  // namespace

bool certificate_replays(const ReductionCertificate& cert) {
  return cert.word.apply(cert.input) == cert.output;
}

LatticeVector approximate_norm_shift(const LatticeVector& v, const Rat& x) {
  if (v.integral()) raise("VectorInLattice", "v already lies in the lattice");
  auto pair = nonintegral_isotropic_pair(v, /*avoid_block=*/-1);
  if (!pair)
    raise("NoUsableIsotropic",
          "no isotropic vector pairs non-integrally with v (no U summand exposed)");
  LatticeVector mu = norm_shift_from_pair(*pair, v, x);
  LatticeVector diff = v - mu;
  Rat err = norm_value(diff) - x;
  if (err < 0) err = -err;
  if (!(err < 1)) raise("InternalError", "norm shift residual " + rat_to_string(err));
  return mu;
}

namespace {

// one R1-reflection that strictly shrinks |m|; root delta = (mu, 1, (-<mu,mu>-2)/2)
LatticeVector r1_root_for(const LatticePtr& lat, const Split& sp, const LatticeVector& mu) {
  std::vector<Rat> c(mu.coords());
  Rat nn = norm_value(mu);
  c[sp.m_idx] = 1;
  c[sp.n_idx] = (-nn - 2) / 2;
  LatticeVector delta(lat, std::move(c));
  if (norm_value(delta) != -2) raise("InternalError", "R1 root construction failed");
  return delta;
}

// closest lattice vector to the rational point u supported on the definite
// blocks (per-block CVP)
LatticeVector definite_cvp(const LatticePtr& lat, const LatticeVector& u, int skip_block) {
  std::vector<Rat> mu(lat->rank(), Rat(0));
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    if (static_cast<int>(s) == skip_block) continue;
    const auto& sm = lat->summands()[s];
    if (sm.kind == SummandKind::U) continue;
    std::vector<std::vector<std::int64_t>> g(sm.rank, std::vector<std::int64_t>(sm.rank));
    for (int i = 0; i < sm.rank; ++i)
      for (int j = 0; j < sm.rank; ++j) g[i][j] = -lat->gram(sm.offset + i, sm.offset + j);
    std::vector<Rat> center(sm.rank);
    for (int i = 0; i < sm.rank; ++i) center[i] = u[sm.offset + i];
    auto best = closest_vector(g, center);
    for (int i = 0; i < sm.rank; ++i) mu[sm.offset + i] = best[i];
  }
  return LatticeVector(lat, std::move(mu));
}

struct Gamma1State {
  LatticeVector current;
  IsometryWord word;
  int steps = 0;
};

// core loop shared by the public op and canonicalize_root; does not normalize
// the sign of m
Gamma1State gamma1_core(const LatticeVector& r, int budget) {
  const auto& lat = r.lattice();
  if (!r.integral()) raise("NotRoot", "root must be integral");
  if (norm_value(r) != -2)
    raise("NotRoot", "norm must be -2, got " + rat_to_string(norm_value(r)));
  Split sp = distinguished_u(lat);
  bool l_has_u = lat->u_blocks().size() >= 2;

  Gamma1State st{r, IsometryWord(lat), 0};
  while (true) {
    Rat m = st.current[sp.m_idx];
    if (m == 0) break;
    // v/m in L <=> every non-distinguished coordinate divisible by m
    bool divisible = true;
    for (int i = 0; i < lat->rank(); ++i) {
      if (i == sp.m_idx || i == sp.n_idx) continue;
      if (!is_integer(st.current[i] / m)) { divisible = false; break; }
    }
    if (divisible) {
      // (b7): for a root, v/m integral forces m = +-1
      if (m != 1 && m != -1)
        raise("InternalError", "divisible case with |m| > 1 cannot be a root");
      break;
    }
    if (st.steps >= budget)
      raise("BudgetExceeded", "gamma1 reduction exceeded " + std::to_string(budget) + " steps");

    // u = v/m with distinguished-U coordinates cleared
    std::vector<Rat> uc(st.current.coords());
    uc[sp.m_idx] = 0;
    uc[sp.n_idx] = 0;
    for (auto& x : uc) x /= m;
    LatticeVector u(lat, std::move(uc));

    LatticeVector mu = LatticeVector::zero(lat);
    if (l_has_u) {
      auto pr = nonintegral_isotropic_pair(u, sp.u_block);
      if (!pr) raise("NoUsableIsotropic", "gamma1 step found no usable isotropic pair");
      mu = norm_shift_from_pair(*pr, u, Rat(-2) / (m * m));
    } else {
      mu = definite_cvp(lat, u, sp.u_block);
    }
    LatticeVector delta = r1_root_for(lat, sp, mu);
    LatticeVector next = reflect(delta, st.current);
    Rat m2 = next[sp.m_idx];
    Rat abs_m = m < 0 ? -m : m;
    Rat abs_m2 = m2 < 0 ? -m2 : m2;
    if (!(abs_m2 < abs_m))
      raise("NoUsableIsotropic",
            "reflection step failed to shrink |<r,e>| (definite residue too deep)");
    Reflection refl;
    refl.root = vector_to_ints(delta);
    st.word.push(refl);
    st.current = next;
    st.steps += 1;
  }
  return st;
}

}  // namespace

ReductionCertificate gamma1_reduce(const LatticeVector& r, int budget) {
  auto st = gamma1_core(r, budget);
  Split sp = distinguished_u(r.lattice());
  if (st.current[sp.m_idx] < 0) {  // normalize m > 0 (Gamma1 contains -id)
    st.word.push(SignFlip{});
    st.current = -st.current;
    st.steps += 1;
  }
  return ReductionCertificate{r, st.word, st.current, st.steps};
}

namespace {

// lambda in L with <v, lambda> = target; v integral supported away from the
// distinguished U; works whenever the pairing values of v with the L-basis
// have content dividing target
LatticeVector pairing_solution(const LatticePtr& lat, const Split& sp,
                               const LatticeVector& v, const Int& target) {
  std::vector<Int> pairings;
  std::vector<int> idx;
  for (int i = 0; i < lat->rank(); ++i) {
    if (i == sp.m_idx || i == sp.n_idx) continue;
    Rat p = pair_value(LatticeVector::basis(lat, i), v);
    pairings.push_back(rat_num(p));
    idx.push_back(i);
  }
  std::vector<Int> coeff;
  Int g = ext_gcd_vector(pairings, coeff);
  if (g == 0 || target % g != 0)
    raise("InternalError", "pairing equation unsolvable (content " + g.str() + ")");
  Int scale = target / g;
  std::vector<Rat> lam(lat->rank(), Rat(0));
  for (size_t k = 0; k < idx.size(); ++k) lam[idx[k]] = Rat(coeff[k] * scale);
  return LatticeVector(lat, std::move(lam));
}

ReductionCertificate canonicalize_in(const LatticePtr& lat, const LatticeVector& delta,
                                     int budget, int depth);

// lift a word over the sub-lattice (ambient minus distinguished U) back into
// the ambient lattice
IsometryWord lift_word(const LatticePtr& ambient, const Split& sp,
                       const LatticePtr& sub, const IsometryWord& inner) {
  // map sub summand index -> ambient summand index, sub coordinate -> ambient
  std::vector<int> block_map;
  std::vector<int> coord_map;
  for (size_t s = 0; s < ambient->summands().size(); ++s) {
    if (static_cast<int>(s) == sp.u_block) continue;
    block_map.push_back(static_cast<int>(s));
    const auto& sm = ambient->summands()[s];
    for (int i = 0; i < sm.rank; ++i) coord_map.push_back(sm.offset + i);
  }
  auto lift_vec = [&](const std::vector<Int>& v) {
    std::vector<Int> out(ambient->rank(), 0);
    for (size_t i = 0; i < v.size(); ++i) out[coord_map[i]] = v[i];
    return out;
  };
  IsometryWord out(ambient);
  for (const auto& g : inner.generators()) {
    if (std::holds_alternative<Reflection>(g)) {
      Reflection r;
      r.root = lift_vec(std::get<Reflection>(g).root);
      out.push(r);
    } else if (std::holds_alternative<Transvection>(g)) {
      const auto& t = std::get<Transvection>(g);
      Transvection lifted;
      lifted.u_block = block_map[t.u_block];
      lifted.gen = t.gen;
      lifted.lambda = lift_vec(t.lambda);
      out.push(lifted);
    } else if (std::holds_alternative<BlockAutomorphism>(g)) {
      const auto& b = std::get<BlockAutomorphism>(g);
      auto colon = b.name.find(':');
      std::string head = b.name.substr(0, colon);
      std::string rest = b.name.substr(colon + 1);
      std::string mapped = head + ":";
      size_t pos = 0;
      bool first = true;
      while (pos <= rest.size()) {
        auto next = rest.find(':', pos);
        std::string tok = rest.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!first) mapped += ":";
        mapped += std::to_string(block_map[std::stoi(tok)]);
        first = false;
        if (next == std::string::npos) break;
        pos = next + 1;
      }
      out.push(BlockAutomorphism{mapped});
    } else {
      raise("InternalError", "sign flip must not appear in recursive words");
    }
  }
  return out;
}

LatticePtr sublattice_without(const LatticePtr& lat, int block) {
  std::string desc;
  bool first = true;
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    if (static_cast<int>(s) == block) continue;
    if (!first) desc += "+";
    first = false;
    switch (lat->summands()[s].kind) {
      case SummandKind::U: desc += "U"; break;
      case SummandKind::E8Neg: desc += "E8(-1)"; break;
      case SummandKind::TwoN:
        desc += "<" + std::to_string(-2 * lat->summands()[s].n) + ">";
        break;
    }
  }
  return Lattice::make(desc);
}

ReductionCertificate canonicalize_in(const LatticePtr& lat, const LatticeVector& delta,
                                     int budget, int depth) {
  if (depth > 8) raise("InternalError", "canonicalize recursion too deep");
  Split sp = distinguished_u(lat);
  auto us = lat->u_blocks();
  const auto& first_u = lat->summands()[us.front()];

  auto canonical = [&]() {
    std::vector<Rat> c(lat->rank(), Rat(0));
    c[first_u.offset] = 1;
    c[first_u.offset + 1] = -1;
    return LatticeVector(lat, std::move(c));
  }();

  auto st = gamma1_core(delta, budget);
  LatticeVector cur = st.current;
  IsometryWord word = st.word;
  int steps = st.steps;

  Rat m = cur[sp.m_idx];

  auto finish_m_unit = [&](LatticeVector c, IsometryWord w, int stp) {
    // c = (v, m, n) with m = +-1; transvection by -v/m empties v
    Rat mm = c[sp.m_idx];
    std::vector<Rat> lam_c(c.coords());
    lam_c[sp.m_idx] = 0;
    lam_c[sp.n_idx] = 0;
    for (auto& x : lam_c) x = -x / mm;
    LatticeVector lam(lat, lam_c);
    if (!lam.is_zero()) {
      Generator tv = make_transvection(lat, sp.u_block, 2, lam);
      c = apply_generator(tv, c);
      w.push(tv);
      stp += 1;
    }
    if (c[sp.m_idx] == -1) {  // (0,-1,1) -> flip to (1,-1)
      Generator flip = BlockAutomorphism{"flip_u:" + std::to_string(sp.u_block)};
      c = apply_generator(flip, c);
      w.push(flip);
      stp += 1;
    }
    if (sp.u_block != us.front()) {
      Generator swap = BlockAutomorphism{
          "swap_u:" + std::to_string(us.front()) + ":" + std::to_string(sp.u_block)};
      c = apply_generator(swap, c);
      w.push(swap);
      stp += 1;
    }
    if (!(c == canonical)) raise("InternalError", "canonicalization missed the base root");
    return ReductionCertificate{delta, w, c, stp};
  };

  if (m == 1 || m == -1) return finish_m_unit(cur, word, steps);

  // m = 0: cur = (v, 0, k) with v a root of L
  if (us.size() >= 2) {
    // recurse on v inside L (all summands except the distinguished U)
    LatticePtr sub = sublattice_without(lat, sp.u_block);
    std::vector<Rat> vc;
    for (int i = 0; i < lat->rank(); ++i) {
      if (i == sp.m_idx || i == sp.n_idx) continue;
      vc.push_back(cur[i]);
    }
    LatticeVector v_sub(sub, std::move(vc));
    auto inner = canonicalize_in(sub, v_sub, budget - steps, depth + 1);
    IsometryWord lifted = lift_word(lat, sp, sub, inner.word);
    cur = lifted.apply(cur);
    word.append(lifted);
    steps += inner.steps;
    // now cur = (f1 - f2, 0, k); clear k with lambda = k * f2
    Rat k = cur[sp.n_idx];
    if (k != 0) {
      std::vector<Rat> lam_c(lat->rank(), Rat(0));
      lam_c[first_u.offset + 1] = k;
      LatticeVector lam(lat, std::move(lam_c));
      Generator tv = make_transvection(lat, sp.u_block, 2, lam);
      cur = apply_generator(tv, cur);
      word.push(tv);
      steps += 1;
    }
    if (!(cur == canonical)) raise("InternalError", "recursive canonicalization failed");
    return ReductionCertificate{delta, word, cur, steps};
  }

  // p = 1 and m = 0: v is a root of the definite part; clear k, push into R1
  Rat k = cur[sp.n_idx];
  std::vector<Rat> vc(cur.coords());
  vc[sp.m_idx] = 0;
  vc[sp.n_idx] = 0;
  LatticeVector v(lat, vc);
  if (k != 0) {
    LatticeVector lam = pairing_solution(lat, sp, v, rat_num(k));
    Generator tv = make_transvection(lat, sp.u_block, 2, lam);
    cur = apply_generator(tv, cur);
    word.push(tv);
    steps += 1;
  }
  // Bor4c: r = (lambda0, 1, -(<lambda0,lambda0>+2)/2) with <v,lambda0> = 1
  LatticeVector lam0 = pairing_solution(lat, sp, v, 1);
  LatticeVector r = r1_root_for(lat, sp, lam0);
  cur = reflect(r, cur);
  Reflection refl;
  refl.root = vector_to_ints(r);
  word.push(refl);
  steps += 1;
  if (!(cur[sp.m_idx] == 1)) raise("InternalError", "R0 -> R1 move failed");
  return finish_m_unit(cur, word, steps);
}

}  // namespace

ReductionCertificate canonicalize_root(const LatticeVector& delta, int budget) {
  const auto& lat = delta.lattice();
  for (const auto& s : lat->summands())
    if (s.kind == SummandKind::TwoN)
      raise("UnsupportedLattice", "ambient must be a sum of U and E8(-1) blocks");
  if (lat->u_blocks().empty())
    raise("UnsupportedLattice", "ambient needs at least one U summand");
  if (!delta.integral()) raise("NotRoot", "root must be integral");
  if (norm_value(delta) != -2)
    raise("NotRoot", "norm must be -2, got " + rat_to_string(norm_value(delta)));
  auto cert = canonicalize_in(lat, delta, budget, 0);
  if (!certificate_replays(cert)) raise("InternalError", "certificate replay mismatch");
  return cert;
}

}  // namespace k3kit
