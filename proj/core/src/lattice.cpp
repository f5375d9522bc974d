#include "k3kit/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "k3kit/error.hpp"

namespace k3kit {

namespace {

// Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 attached to 4.
constexpr std::pair<int, int> kE8Edges[] = {
    {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};

struct ParsedSummand {
  SummandKind kind;
  std::int64_t n;
  int count;
};

void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

ParsedSummand parse_summand(const std::string& s, size_t& i) {
  ParsedSummand out{SummandKind::U, 0, 1};
  skip_ws(s, i);
  if (i >= s.size()) raise("MalformedDescriptor", "expected summand in '" + s + "'");
  if (s.compare(i, 6, "E8(-1)") == 0) {
    out.kind = SummandKind::E8Neg;
    i += 6;
  } else if (s[i] == 'U') {
    out.kind = SummandKind::U;
    i += 1;
  } else if (s[i] == '<') {
    size_t close = s.find('>', i);
    if (close == std::string::npos)
      raise("MalformedDescriptor", "unterminated '<' in '" + s + "'");
    std::string inner = s.substr(i + 1, close - i - 1);
    try {
      size_t used = 0;
      long long val = std::stoll(inner, &used);
      if (used != inner.size()) throw std::invalid_argument(inner);
      if (val >= 0 || val % 2 != 0)
        raise("MalformedDescriptor",
              "'<" + inner + ">' must be <-2n> with positive n");
      out.kind = SummandKind::TwoN;
      out.n = -val / 2;
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      raise("MalformedDescriptor", "bad block '<" + inner + ">'");
    }
    i = close + 1;
  } else {
    raise("MalformedDescriptor",
          "unexpected character '" + std::string(1, s[i]) + "' in '" + s + "'");
  }
  skip_ws(s, i);
  if (i < s.size() && s[i] == '^') {
    ++i;
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) raise("MalformedDescriptor", "missing exponent in '" + s + "'");
    out.count = std::stoi(s.substr(start, i - start));
    if (out.count < 1) raise("MalformedDescriptor", "exponent must be >= 1");
  }
  return out;
}

Int det_bareiss(std::vector<std::vector<Int>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) { pivot = r; break; }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace

std::shared_ptr<const Lattice> Lattice::make(const std::string& descriptor) {
  size_t i = 0;
  skip_ws(descriptor, i);
  if (i >= descriptor.size()) raise("EmptyDescriptor", "no summands given");

  std::vector<ParsedSummand> parsed;
  while (true) {
    parsed.push_back(parse_summand(descriptor, i));
    skip_ws(descriptor, i);
    if (i >= descriptor.size()) break;
    if (descriptor[i] != '+')
      raise("MalformedDescriptor",
            "expected '+' at position " + std::to_string(i) + " of '" + descriptor + "'");
    ++i;
  }

  auto lat = std::shared_ptr<Lattice>(new Lattice());
  int offset = 0;
  int pos = 0, neg = 0;
  std::ostringstream label;
  bool first = true;
  for (const auto& ps : parsed) {
    if (!first) label << "+";
    first = false;
    switch (ps.kind) {
      case SummandKind::U: label << "U"; break;
      case SummandKind::E8Neg: label << "E8(-1)"; break;
      case SummandKind::TwoN: label << "<" << (-2 * ps.n) << ">"; break;
    }
    if (ps.count > 1) label << "^" << ps.count;
    for (int c = 0; c < ps.count; ++c) {
      Summand s;
      s.kind = ps.kind;
      s.n = ps.n;
      s.offset = offset;
      s.rank = ps.kind == SummandKind::U ? 2 : (ps.kind == SummandKind::E8Neg ? 8 : 1);
      lat->summands_.push_back(s);
      offset += s.rank;
      if (ps.kind == SummandKind::U) { pos += 1; neg += 1; }
      else if (ps.kind == SummandKind::E8Neg) neg += 8;
      else neg += 1;
    }
  }
  lat->rank_ = offset;
  lat->signature_ = {pos, neg};
  lat->label_ = label.str();

  lat->gram_.assign(offset, std::vector<std::int64_t>(offset, 0));
  for (const auto& s : lat->summands_) {
    switch (s.kind) {
      case SummandKind::U:
        lat->gram_[s.offset][s.offset + 1] = 1;
        lat->gram_[s.offset + 1][s.offset] = 1;
        break;
      case SummandKind::E8Neg:
        for (int d = 0; d < 8; ++d) lat->gram_[s.offset + d][s.offset + d] = -2;
        for (auto [a, b] : kE8Edges) {
          lat->gram_[s.offset + a - 1][s.offset + b - 1] = 1;
          lat->gram_[s.offset + b - 1][s.offset + a - 1] = 1;
        }
        break;
      case SummandKind::TwoN:
        lat->gram_[s.offset][s.offset] = -2 * s.n;
        break;
    }
  }

  std::vector<std::vector<Int>> big(offset, std::vector<Int>(offset));
  for (int r = 0; r < offset; ++r)
    for (int c = 0; c < offset; ++c) big[r][c] = lat->gram_[r][c];
  lat->det_ = det_bareiss(std::move(big));

  return lat;
}

bool Lattice::same_as(const Lattice& other) const {
  return rank_ == other.rank_ && gram_ == other.gram_;
}

std::vector<int> Lattice::u_blocks() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(summands_.size()); ++i)
    if (summands_[i].kind == SummandKind::U) out.push_back(i);
  return out;
}

bool Lattice::is_negative_definite() const { return signature_.first == 0; }

LatticeVector::LatticeVector(LatticePtr lattice, std::vector<Rat> coords)
    : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != lattice_->rank())
    raise("DimensionMismatch",
          "vector has " + std::to_string(coords_.size()) + " coordinates, lattice rank is " +
              std::to_string(lattice_->rank()));
}

LatticeVector LatticeVector::zero(LatticePtr lattice) {
  std::vector<Rat> c(lattice->rank(), Rat(0));
  return LatticeVector(std::move(lattice), std::move(c));
}

LatticeVector LatticeVector::basis(LatticePtr lattice, int i) {
  std::vector<Rat> c(lattice->rank(), Rat(0));
  c.at(i) = 1;
  return LatticeVector(std::move(lattice), std::move(c));
}

bool LatticeVector::integral() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Rat& x) { return is_integer(x); });
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Rat& x) { return x == 0; });
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  std::vector<Rat> c(coords_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return LatticeVector(lattice_, std::move(c));
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
  std::vector<Rat> c(coords_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return LatticeVector(lattice_, std::move(c));
}

LatticeVector LatticeVector::operator-() const {
  std::vector<Rat> c(coords_);
  for (auto& x : c) x = -x;
  return LatticeVector(lattice_, std::move(c));
}

LatticeVector LatticeVector::scaled(const Rat& k) const {
  std::vector<Rat> c(coords_);
  for (auto& x : c) x *= k;
  return LatticeVector(lattice_, std::move(c));
}

bool LatticeVector::operator==(const LatticeVector& o) const {
  return coords_ == o.coords_;
}

bool LatticeVector::operator<(const LatticeVector& o) const {
  return std::lexicographical_compare(coords_.begin(), coords_.end(),
                                      o.coords_.begin(), o.coords_.end());
}

std::string LatticeVector::to_string() const {
  std::string out = "[";
  for (int i = 0; i < size(); ++i) {
    if (i) out += ",";
    out += rat_to_string(coords_[i]);
  }
  return out + "]";
}

Rat pair_value(const LatticeVector& v, const LatticeVector& w) {
  if (!v.lattice() || !w.lattice() || !v.lattice()->same_as(*w.lattice()))
    raise("LatticeMismatch", "vectors belong to different lattices");
  const auto& g = v.lattice()->gram();
  const int n = v.size();
  Rat acc = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    Rat row = 0;
    for (int j = 0; j < n; ++j) {
      if (g[i][j] == 0 || w[j] == 0) continue;
      row += Rat(g[i][j]) * w[j];
    }
    acc += v[i] * row;
  }
  return acc;
}

Rat norm_value(const LatticeVector& v) { return pair_value(v, v); }

LatticeVector reflect(const LatticeVector& delta, const LatticeVector& v) {
  if (norm_value(delta) != -2)
    raise("NotRoot", "reflection vector must have norm -2, got " +
                         rat_to_string(norm_value(delta)));
  Rat c = pair_value(v, delta);
  return v + delta.scaled(c);
}

bool is_primitive(const LatticeVector& v) {
  if (!v.integral()) raise("NotIntegral", "primitivity is defined for integral vectors");
  if (v.is_zero()) raise("ZeroVector", "zero vector has no content");
  Int g = 0;
  for (const auto& x : v.coords()) g = gcd_int(g, rat_num(x));
  return g == 1;
}

ComplementResult orthogonal_complement(const LatticeVector& l) {
  const auto& lat = l.lattice();
  if (!l.integral()) raise("NotIntegral", "polarization must be integral");
  if (l.is_zero()) raise("ZeroVector", "polarization must be nonzero");
  if (!is_primitive(l)) raise("NotPrimitive", "polarization has content > 1");
  Rat nn = norm_value(l);
  if (nn <= 0) raise("NotPositiveNorm", "need <l,l> = 2n > 0, got " + rat_to_string(nn));

  // locate the single U summand carrying l, in the normal form l = e1 + n e2
  int block = -1;
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    const auto& sm = lat->summands()[s];
    bool inside = true;
    for (int i = 0; i < lat->rank(); ++i) {
      bool in_block = i >= sm.offset && i < sm.offset + sm.rank;
      if (!in_block && l[i] != 0) { inside = false; break; }
    }
    if (inside) {
      if (sm.kind != SummandKind::U)
        raise("NotInHyperbolicSummand", "l lies in a non-U summand");
      block = static_cast<int>(s);
      break;
    }
  }
  if (block < 0)
    raise("NotInHyperbolicSummand",
          "l must lie in a single U summand (general position is out of scope)");

  const auto& sm = lat->summands()[block];
  Rat a = l[sm.offset], b = l[sm.offset + 1];
  if (a != 1)
    raise("NotInHyperbolicSummand",
          "expected l = e1 + n e2 in the U summand, got e1-coefficient " + rat_to_string(a));
  Int n = rat_num(b);
  // <l,l> = 2n
  std::string desc = "<-" + Int(2 * n).str() + ">";
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    if (static_cast<int>(s) == block) continue;
    const auto& t = lat->summands()[s];
    desc += "+";
    switch (t.kind) {
      case SummandKind::U: desc += "U"; break;
      case SummandKind::E8Neg: desc += "E8(-1)"; break;
      case SummandKind::TwoN: desc += "<" + std::to_string(-2 * t.n) + ">"; break;
    }
  }
  auto comp = Lattice::make(desc);

  ComplementResult out;
  out.lattice = comp;
  std::vector<Int> lstar_row(lat->rank(), 0);
  lstar_row[sm.offset] = 1;
  lstar_row[sm.offset + 1] = -n;
  out.embedding.push_back(lstar_row);
  for (size_t s = 0; s < lat->summands().size(); ++s) {
    if (static_cast<int>(s) == block) continue;
    const auto& t = lat->summands()[s];
    for (int i = 0; i < t.rank; ++i) {
      std::vector<Int> row(lat->rank(), 0);
      row[t.offset + i] = 1;
      out.embedding.push_back(row);
    }
  }
  std::vector<Rat> ls(lat->rank(), Rat(0));
  ls[sm.offset] = 1;
  ls[sm.offset + 1] = Rat(-n);
  out.l_star = LatticeVector(lat, std::move(ls));
  return out;
}

}  // namespace k3kit
