#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace bipolar::algebra {

using Integer = mpz_class;
using Rational = mpq_class;

// "a/b", or "a" when the value is integral.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
Rational parse_rational(const std::string& s);

// Non-negative residue, m > 0.
Integer mod(const Integer& a, const Integer& m);
// Representative of q mod 1 in [0, 1).
Rational frac(const Rational& q);
Integer floor_div(const Integer& a, const Integer& b);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::int64_t to_i64(const Integer& z) { return static_cast<std::int64_t>(z.get_si()); }

}  // namespace bipolar::algebra
