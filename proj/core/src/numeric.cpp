#include "k3kit/numeric.hpp"

#include <limits>

#include "k3kit/error.hpp"

namespace k3kit {

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int p(text.substr(0, slash));
    Int q(text.substr(slash + 1));
    if (q == 0) raise("MalformedRational", "zero denominator in '" + text + "'");
    return Rat(p, q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    raise("MalformedRational", "cannot parse '" + text + "'");
  }
}

std::string rat_to_string(const Rat& x) {
  if (is_integer(x)) return rat_num(x).str();
  return rat_num(x).str() + "/" + rat_den(x).str();
}

std::optional<std::int64_t> to_int64(const Int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return static_cast<std::int64_t>(x);
}

Int gcd_int(const Int& a, const Int& b) {
  Int x = a < 0 ? -a : a, y = b < 0 ? -b : b;
  while (y != 0) {
    Int r = x % y;
    x = y;
    y = r;
  }
  return x;
}

Int ext_gcd_vector(const std::vector<Int>& values, std::vector<Int>& coeffs) {
  coeffs.assign(values.size(), 0);
  Int g = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) continue;
    if (g == 0) {
      g = values[i] < 0 ? -values[i] : values[i];
      coeffs[i] = values[i] < 0 ? -1 : 1;
      continue;
    }
    // extended gcd of (g, values[i])
    Int a = g, b = values[i], x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b != 0) {
      Int q = a / b;
      Int r = a - q * b;
      a = b; b = r;
      Int nx = x0 - q * x1; x0 = x1; x1 = nx;
      Int ny = y0 - q * y1; y0 = y1; y1 = ny;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    for (auto& c : coeffs) c *= x0;
    coeffs[i] += y0;
    g = a;
    if (g == 1) break;
  }
  return g;
}

}  // namespace k3kit
