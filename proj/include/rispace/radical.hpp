#pragma once

#include <compare>
#include <optional>
#include <string>

#include "rispace/rational.hpp"

namespace rispace {

constexpr unsigned kDefaultPrecision = 128;

/// Closed rational interval [lo, hi] certified to contain a real number.
struct Enclosure {
  Rational lo;
  Rational hi;

  static Enclosure exact(const Rational& value) { return {value, value}; }

  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
/// Both operands must be nonnegative.
Enclosure operator*(const Enclosure& a, const Enclosure& b);
/// Both operands must be nonnegative; the divisor strictly positive.
Enclosure operator/(const Enclosure& a, const Enclosure& b);

/// `p/q` when exact, otherwise `[lo, hi]`.
std::string to_string(const Enclosure& e);

/// Enclosure of ln(x) for x > 0, width at most 2^-precision.
Enclosure log_enclosure(const Rational& x, unsigned precision = kDefaultPrecision);

/// Nonnegative real of the form radicand^(1/degree) with rational radicand.
///
/// Closed under multiplication and division, and totally ordered by exact
/// integer-power comparison, which is all the power-law gauges need: every
/// value t^(1-1/p), 2^(1-1/p), and every Marcinkiewicz norm of a step function
/// against such a gauge is of this form.
class Radical {
 public:
  Radical() : radicand_(0), degree_(1) {}
  Radical(const Rational& value) : radicand_(value), degree_(1) { normalize(); }
  Radical(long value) : Radical(Rational(value)) {}
  Radical(const Rational& radicand, unsigned degree);

  /// 2^exponent for rational exponent.
  static Radical power_of_two(const Rational& exponent);

  const Rational& radicand() const { return radicand_; }
  unsigned degree() const { return degree_; }

  bool is_rational() const { return degree_ == 1; }
  /// Throws Error(InvalidArgument) if irrational.
  const Rational& rational() const;
  /// Exponent e with value 2^e, when the value is a rational power of two.
  std::optional<Rational> power_of_two_exponent() const;
  bool is_zero() const { return radicand_ == 0; }

  Radical pow(unsigned long n) const;

  friend Radical operator*(const Radical& a, const Radical& b);
  friend Radical operator/(const Radical& a, const Radical& b);
  friend std::strong_ordering operator<=>(const Radical& a, const Radical& b);
  friend bool operator==(const Radical& a, const Radical& b) {
    return a.degree_ == b.degree_ && a.radicand_ == b.radicand_;
  }

  /// Width at most 2^-precision.
  Enclosure enclose(unsigned precision = kDefaultPrecision) const;

  /// `p/q` if rational, `2^(p/q)` for powers of two, otherwise `(p/q)^(1/n)`.
  std::string to_string() const;

 private:
  void normalize();

  Rational radicand_;
  unsigned degree_;
};

inline std::string to_string(const Radical& r) { return r.to_string(); }

}  // namespace rispace
