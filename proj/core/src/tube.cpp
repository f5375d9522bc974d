#include "k3kit/tube.hpp"

#include "k3kit/error.hpp"

namespace k3kit {

RatC lorentz_pair(const std::vector<RatC>& a, const std::vector<RatC>& b) {
  if (a.size() != b.size()) raise("DimensionMismatch", "lorentz pairing sizes differ");
  RatC acc;
  for (size_t i = 0; i < a.size(); ++i) {
    RatC term = a[i] * b[i];
    if (i == 0) acc = acc + term;
    else acc = acc - term;
  }
  return acc;
}

Rat lorentz_pair_real(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) raise("DimensionMismatch", "lorentz pairing sizes differ");
  Rat acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += (i == 0 ? 1 : -1) * a[i] * b[i];
  return acc;
}

bool in_positive_cone(const std::vector<Rat>& y) {
  if (y.empty()) return false;
  return lorentz_pair_real(y, y) > 0 && y[0] > 0;
}

TubeEmbedding tube_embed(const TubePoint& w) {
  const size_t p = w.w.size();
  if (p == 0) raise("DimensionMismatch", "tube point must have positive length");
  std::vector<Rat> y(p);
  for (size_t i = 0; i < p; ++i) y[i] = w.w[i].im;
  if (!in_positive_cone(y))
    raise("ImaginaryPartNotInCone", "Im w must lie in the positive cone V+");

  RatC ww = lorentz_pair(w.w, w.w);
  TubeEmbedding out;
  out.psi = w.w;
  out.psi.push_back(RatC(-ww.re / 2, -ww.im / 2));
  out.psi.push_back(RatC(Rat(1), Rat(0)));

  // ambient pairing: Lorentzian block plus U on the last two slots
  auto pair_full = [p](const std::vector<RatC>& a, const std::vector<RatC>& b) {
    std::vector<RatC> a0(a.begin(), a.begin() + p), b0(b.begin(), b.begin() + p);
    RatC acc = lorentz_pair(a0, b0);
    acc = acc + a[p] * b[p + 1] + a[p + 1] * b[p];
    return acc;
  };
  out.isotropy = pair_full(out.psi, out.psi);
  std::vector<RatC> conj(out.psi.size());
  for (size_t i = 0; i < out.psi.size(); ++i) conj[i] = out.psi[i].conj();
  RatC with_conj = pair_full(out.psi, conj);
  if (with_conj.im != 0) raise("InternalError", "<Psi, conj Psi> must be real");
  out.pairing_with_conjugate = with_conj.re;
  return out;
}

}  // namespace k3kit
