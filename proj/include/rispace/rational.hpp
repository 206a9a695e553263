#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rispace {

using Rational = mpq_class;

/// Parses `p/q` or an integer `p`. Throws Error(InvalidArgument) on malformed
/// input or a zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Always `p/q` with q >= 1 and gcd(p, q) = 1.
std::string to_string(const Rational& value);

/// Decimal rendering with round-half-even at `significant_digits` digits.
std::string to_decimal(const Rational& value, int significant_digits = 12);

Rational pow(const Rational& base, unsigned long exponent);

/// num/den in canonical form (mpq_class does not reduce on construction).
inline Rational fraction(const mpz_class& num, const mpz_class& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace rispace
