#include "k3kit/isometry.hpp"

#include <sstream>

#include "k3kit/error.hpp"

namespace k3kit {

namespace {

LatticeVector from_ints(const LatticePtr& lat, const std::vector<Int>& v) {
  std::vector<Rat> c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = v[i];
  return LatticeVector(lat, std::move(c));
}

std::vector<int> parse_name_ints(const std::string& name, const std::string& prefix) {
  std::vector<int> out;
  std::string rest = name.substr(prefix.size());
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ':'))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

LatticeVector apply_generator(const Generator& g, const LatticeVector& v) {
  const auto& lat = v.lattice();
  if (std::holds_alternative<Reflection>(g)) {
    const auto& r = std::get<Reflection>(g);
    return reflect(from_ints(lat, r.root), v);
  }
  if (std::holds_alternative<Transvection>(g)) {
    const auto& t = std::get<Transvection>(g);
    const auto& sm = lat->summands().at(t.u_block);
    if (sm.kind != SummandKind::U) raise("NotHyperbolicBlock", "transvection needs a U summand");
    int e_idx = sm.offset + (t.gen == 2 ? 1 : 0);
    int f_idx = sm.offset + (t.gen == 2 ? 0 : 1);
    LatticeVector e = LatticeVector::basis(lat, e_idx);
    LatticeVector lam = from_ints(lat, t.lambda);
    Rat m = v[f_idx];          // <v, e>
    Rat vl = pair_value(v, lam);
    Rat ll = norm_value(lam);
    // x + m*lambda - <x,lambda> e - (ll/2) m e
    LatticeVector out = v + lam.scaled(m);
    out = out + e.scaled(-vl - m * ll / 2);
    return out;
  }
  if (std::holds_alternative<SignFlip>(g)) return -v;

  const auto& b = std::get<BlockAutomorphism>(g);
  std::vector<Rat> c(v.coords());
  if (b.name.rfind("flip_u:", 0) == 0) {
    auto ids = parse_name_ints(b.name, "flip_u:");
    if (ids.size() != 1) raise("MalformedGenerator", "bad name '" + b.name + "'");
    const auto& sm = lat->summands().at(ids[0]);
    if (sm.kind != SummandKind::U) raise("NotHyperbolicBlock", b.name);
    std::swap(c[sm.offset], c[sm.offset + 1]);
  } else if (b.name.rfind("neg_u:", 0) == 0) {
    auto ids = parse_name_ints(b.name, "neg_u:");
    if (ids.size() != 1) raise("MalformedGenerator", "bad name '" + b.name + "'");
    const auto& sm = lat->summands().at(ids[0]);
    if (sm.kind != SummandKind::U) raise("NotHyperbolicBlock", b.name);
    c[sm.offset] = -c[sm.offset];
    c[sm.offset + 1] = -c[sm.offset + 1];
  } else if (b.name.rfind("swap_u:", 0) == 0) {
    auto ids = parse_name_ints(b.name, "swap_u:");
    if (ids.size() != 2) raise("MalformedGenerator", "bad name '" + b.name + "'");
    const auto& s1 = lat->summands().at(ids[0]);
    const auto& s2 = lat->summands().at(ids[1]);
    if (s1.kind != SummandKind::U || s2.kind != SummandKind::U)
      raise("NotHyperbolicBlock", b.name);
    std::swap(c[s1.offset], c[s2.offset]);
    std::swap(c[s1.offset + 1], c[s2.offset + 1]);
  } else {
    raise("MalformedGenerator", "unknown block automorphism '" + b.name + "'");
  }
  return LatticeVector(lat, std::move(c));
}

void IsometryWord::append(const IsometryWord& other) {
  for (const auto& g : other.gens_) gens_.push_back(g);
}

LatticeVector IsometryWord::apply(const LatticeVector& v) const {
  LatticeVector out = v;
  for (const auto& g : gens_) out = apply_generator(g, out);
  return out;
}

bool generator_is_isometry(const Generator& g, const LatticePtr& lattice) {
  const int n = lattice->rank();
  std::vector<LatticeVector> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i)
    images.push_back(apply_generator(g, LatticeVector::basis(lattice, i)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (pair_value(images[i], images[j]) != Rat(lattice->gram(i, j))) return false;
  return true;
}

Generator make_transvection(const LatticePtr& lattice, int u_block, int gen,
                            const LatticeVector& lambda) {
  if (!lambda.integral()) raise("NotIntegral", "transvection lambda must be integral");
  const auto& sm = lattice->summands().at(u_block);
  if (sm.kind != SummandKind::U) raise("NotHyperbolicBlock", "transvection needs a U summand");
  if (lambda[sm.offset] != 0 || lambda[sm.offset + 1] != 0)
    raise("MalformedGenerator", "transvection lambda must avoid its own U summand");
  Transvection t;
  t.u_block = u_block;
  t.gen = gen == 1 ? 1 : 2;
  t.lambda.resize(lambda.size());
  for (int i = 0; i < lambda.size(); ++i) t.lambda[i] = rat_num(lambda[i]);
  return t;
}

}  // namespace k3kit
