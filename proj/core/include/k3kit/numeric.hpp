#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

namespace k3kit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rat& x) { return rat_den(x) == 1; }

// floor(p/q) for any sign, exact
inline Int rat_floor(const Rat& x) {
  Int p = rat_num(x), q = rat_den(x);
  Int f = p / q;
  if (p % q != 0 && ((p < 0) != (q < 0))) f -= 1;
  return f;
}

// nearest integer, halves round up (deterministic)
inline Int rat_round(const Rat& x) { return rat_floor(x + Rat(1, 2)); }

Rat parse_rat(const std::string& text);
std::string rat_to_string(const Rat& x);

std::optional<std::int64_t> to_int64(const Int& x);

Int gcd_int(const Int& a, const Int& b);

// g = gcd(values), with coefficients c such that sum c_i * values_i = g.
// Empty input yields g = 0.
Int ext_gcd_vector(const std::vector<Int>& values, std::vector<Int>& coeffs);

}  // namespace k3kit
