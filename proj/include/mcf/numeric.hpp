#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <string>
#include <string_view>

namespace mcf {

using Integer = mpz_class;
using Rational = mpq_class;

// Float with a 113-bit significand, used only in probe mode.
using ProbeReal = boost::multiprecision::cpp_bin_float_quad;

// "p/q" or "p"; the result is canonical. Throws ParseError.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Canonical "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

inline ProbeReal to_probe(const Rational& q) {
  return ProbeReal(q.get_num().get_str()) / ProbeReal(q.get_den().get_str());
}

inline ProbeReal to_probe(const Integer& z) { return ProbeReal(z.get_str()); }

// Scalar-generic helpers so the step functions can be shared by the exact
// and the probe arithmetic.
inline Rational floor_div(const Rational& a, const Rational& b) {
  Rational q = a / b;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

inline ProbeReal floor_div(const ProbeReal& a, const ProbeReal& b) {
  return boost::multiprecision::floor(a / b);
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const ProbeReal& r) { return r == 0; }

}  // namespace mcf
