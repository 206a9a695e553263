#pragma once

#include <optional>
#include <string>

#include "rispace/rational.hpp"

namespace rispace {

/// A length in measure units, possibly infinite. Used for the domain length
/// gamma of (0, gamma) and for range bounds such as alpha.
class Extent {
 public:
  static Extent infinite() { return Extent(); }

  explicit Extent(Rational value);
  Extent(long value) : Extent(Rational(value)) {}

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws Error(InvalidArgument) when infinite.
  const Rational& value() const;

  bool operator==(const Extent& other) const { return value_ == other.value_; }

  /// Strict comparison against a finite point.
  bool exceeds(const Rational& t) const { return is_infinite() || *value_ > t; }
  bool at_least(const Rational& t) const { return is_infinite() || *value_ >= t; }

 private:
  Extent() = default;
  std::optional<Rational> value_;
};

Extent min(const Extent& a, const Extent& b);

/// `inf` or `p/q`.
std::string to_string(const Extent& extent);
Extent parse_extent(std::string_view text);

}  // namespace rispace
