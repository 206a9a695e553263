#pragma once

#include <vector>

#include "rispace/extent.hpp"
#include "rispace/rational.hpp"

namespace rispace {

struct Knot {
  Rational t;
  Rational value;

  bool operator==(const Knot&) const = default;
};

/// Increasing concave piecewise-linear function on (0, gamma).
///
/// The function starts at `jump` (its value at 0+), passes through `knots`
/// and continues with `final_slope` after the last knot. Beyond a finite
/// gamma it is extended by the constant value at gamma, which is the natural
/// convention for head integrals of functions extended by zero.
///
/// Construction validates monotonicity and concavity and canonicalizes:
/// collinear knots are removed and a knot placed exactly at a finite gamma is
/// folded into the final slope.
class PiecewiseLinearConcave {
 public:
  PiecewiseLinearConcave(Rational jump, std::vector<Knot> knots, Rational final_slope, Extent extent);

  const Rational& jump() const { return jump_; }
  const std::vector<Knot>& knots() const { return knots_; }
  const Rational& final_slope() const { return final_slope_; }
  const Extent& extent() const { return extent_; }

  /// Value at t >= 0; t = 0 yields the value at 0+.
  Rational operator()(const Rational& t) const;

  /// Value at (or limit towards) a finite gamma.
  Rational value_at_extent() const;

  /// Slope of each segment, the last entry being the final slope.
  std::vector<Rational> slopes() const;

  /// Slope on [t, t+eps); zero past a finite gamma.
  Rational right_slope(const Rational& t) const;

  /// Slope as t -> infinity under the constant extension past gamma.
  Rational eventual_slope() const;

  bool is_zero() const;

  bool operator==(const PiecewiseLinearConcave&) const = default;

 private:
  Rational jump_;
  std::vector<Knot> knots_;
  Rational final_slope_;
  Extent extent_;
};

/// True iff lower(t) <= upper(t) for all t in [0, up_to). Both profiles are
/// piecewise linear, so this is decided exactly at the union of knots, at
/// up_to itself, and by the eventual slopes when up_to is infinite.
bool dominated(const PiecewiseLinearConcave& lower, const PiecewiseLinearConcave& upper, const Extent& up_to);

}  // namespace rispace
