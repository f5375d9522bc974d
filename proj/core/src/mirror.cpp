#include "k3kit/mirror.hpp"

#include <algorithm>

#include "k3kit/enumerate.hpp"
#include "k3kit/error.hpp"

namespace k3kit {

namespace {

Rat pair_rat(const LatticePtr& lat, const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat acc = 0;
  const int n = lat->rank();
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (lat->gram(i, j) == 0 || b[j] == 0) continue;
      acc += a[i] * Rat(lat->gram(i, j)) * b[j];
    }
  }
  return acc;
}

RatC pair_c(const LatticePtr& lat, const std::vector<RatC>& a, const std::vector<RatC>& b) {
  RatC acc;
  const int n = lat->rank();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto g = lat->gram(i, j);
      if (g == 0) continue;
      RatC term = a[i] * b[j];
      acc.re += Rat(g) * term.re;
      acc.im += Rat(g) * term.im;
    }
  }
  return acc;
}

}  // namespace

void validate_bfield(const BField& b) {
  if (static_cast<int>(b.re.size()) != b.lattice->rank() ||
      static_cast<int>(b.im.size()) != b.lattice->rank())
    raise("DimensionMismatch", "B-field coordinate length mismatch");
  std::vector<Rat> im = b.im;
  Rat imim = pair_rat(b.lattice, im, im);
  if (!(imim > 0))
    raise("NotBField", "<Im b, Im b> must be positive, got " + rat_to_string(imim));
}

ExtendedBField extend_bfield(const BField& b) {
  validate_bfield(b);
  ExtendedBField out;
  out.extended = Lattice::make(b.lattice->label() + "+U");
  const int n = b.lattice->rank();
  out.v.resize(n + 2);
  for (int i = 0; i < n; ++i) out.v[i] = RatC(b.re[i], b.im[i]);
  std::vector<RatC> bb(n);
  for (int i = 0; i < n; ++i) bb[i] = RatC(b.re[i], b.im[i]);
  RatC norm = pair_c(b.lattice, bb, bb);
  out.v[n] = RatC(Rat(1), Rat(0));
  out.v[n + 1] = RatC(-norm.re / 2, -norm.im / 2);
  RatC iso = pair_c(out.extended, out.v, out.v);
  if (!(iso.re == 0 && iso.im == 0))
    raise("InternalError", "extended B-field failed isotropy");
  return out;
}

FourPlane four_plane(const std::vector<RatC>& omega, const BField& b) {
  if (static_cast<int>(omega.size()) != b.lattice->rank())
    raise("DimensionMismatch", "omega coordinate length mismatch");
  RatC oo = pair_c(b.lattice, omega, omega);
  if (!(oo.re == 0 && oo.im == 0))
    raise("RiemannRelationViolated", "<omega,omega> must vanish");
  std::vector<RatC> conj(omega.size());
  for (size_t i = 0; i < omega.size(); ++i) conj[i] = omega[i].conj();
  RatC obar = pair_c(b.lattice, omega, conj);
  if (!(obar.re > 0))
    raise("RiemannRelationViolated", "<omega, conj omega> must be positive");

  ExtendedBField v = extend_bfield(b);
  const int n24 = v.extended->rank();
  FourPlane out;
  out.rows.assign(4, std::vector<Rat>(n24, Rat(0)));
  for (size_t i = 0; i < omega.size(); ++i) {
    out.rows[0][i] = omega[i].re;
    out.rows[1][i] = omega[i].im;
  }
  for (int i = 0; i < n24; ++i) {
    out.rows[2][i] = v.v[i].re;
    out.rows[3][i] = v.v[i].im;
  }
  out.gram.assign(4, std::vector<Rat>(4, Rat(0)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.gram[i][j] = pair_rat(v.extended, out.rows[i], out.rows[j]);

  // exact positivity via leading principal minors of the common-denominator
  // integer matrix
  Int den = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Int d = rat_den(out.gram[i][j]);
      den = den / gcd_int(den, d) * d;
    }
  std::vector<std::vector<Int>> scaled(4, std::vector<Int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Rat x = out.gram[i][j] * Rat(den);
      scaled[i][j] = rat_num(x);
    }
  if (!is_positive_definite_exact(scaled))
    raise("NotPositiveFourPlane", "4-plane Gram is not positive definite");
  return out;
}

void validate_msurface(const MarkedMSurfaceData& d) {
  const auto& sums = d.ambient->summands();
  const int ns = static_cast<int>(sums.size());
  std::vector<int> seen(ns, 0);
  for (int i : d.picard) {
    if (i < 0 || i >= ns) raise("MalformedDescriptor", "picard summand index out of range");
    seen[i] += 1;
  }
  for (int i : d.transcendental) {
    if (i < 0 || i >= ns) raise("MalformedDescriptor", "transcendental index out of range");
    seen[i] += 1;
  }
  for (int i = 0; i < ns; ++i)
    if (seen[i] != 1)
      raise("MalformedDescriptor",
            "summands must partition the ambient lattice (index " + std::to_string(i) + ")");
  if (rank_of_blocks(d.ambient, d.picard) + rank_of_blocks(d.ambient, d.transcendental) !=
      d.ambient->rank())
    raise("MalformedDescriptor", "ranks do not add up");
  bool in_t = std::find(d.transcendental.begin(), d.transcendental.end(), d.u_choice) !=
              d.transcendental.end();
  if (!in_t || sums[d.u_choice].kind != SummandKind::U)
    raise("NoHyperbolicSummand", "u_choice must be a U summand inside T");
}

int rank_of_blocks(const LatticePtr& lat, const std::vector<int>& blocks) {
  int r = 0;
  for (int i : blocks) r += lat->summands()[i].rank;
  return r;
}

std::pair<int, int> signature_of_blocks(const LatticePtr& lat, const std::vector<int>& blocks) {
  int p = 0, q = 0;
  for (int i : blocks) {
    switch (lat->summands()[i].kind) {
      case SummandKind::U: p += 1; q += 1; break;
      case SummandKind::E8Neg: q += 8; break;
      case SummandKind::TwoN: q += 1; break;
    }
  }
  return {p, q};
}

MarkedMSurfaceData mirror_swap(const MarkedMSurfaceData& d) {
  validate_msurface(d);
  MarkedMSurfaceData out;
  out.ambient = d.ambient;
  // M1 = complement of the chosen U inside T
  for (int i : d.transcendental)
    if (i != d.u_choice) out.picard.push_back(i);
  // T1 = M (+) U
  out.transcendental = d.picard;
  out.transcendental.push_back(d.u_choice);
  std::sort(out.picard.begin(), out.picard.end());
  std::sort(out.transcendental.begin(), out.transcendental.end());
  out.u_choice = d.u_choice;
  validate_msurface(out);
  return out;
}

}  // namespace k3kit
