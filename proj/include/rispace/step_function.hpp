#pragma once

#include <optional>
#include <vector>

#include "rispace/concave_profile.hpp"
#include "rispace/extent.hpp"
#include "rispace/rational.hpp"

namespace rispace {

/// value on the half-open interval [left, right).
struct Piece {
  Rational left;
  Rational right;
  Rational value;

  bool operator==(const Piece&) const = default;
};

/// Nonnegative simple function on (0, gamma) with rational data.
///
/// Stored canonically as contiguous cells [0, x1), [x1, x2), ... followed by
/// a constant tail on [tail_start, gamma). Adjacent cells never share a
/// value, the last cell differs from the tail, and for finite gamma the tail
/// region is nonempty. Two functions are equal iff their canonical forms are.
class StepFunction {
 public:
  /// `pieces` must be sorted, disjoint and inside (0, gamma); gaps are zero.
  /// `tail_value` applies from the right end of the last piece to gamma.
  StepFunction(std::vector<Piece> pieces, Rational tail_value, Extent extent);

  static StepFunction zero(Extent extent);
  static StepFunction constant(const Rational& value, Extent extent);
  /// value * chi[left, right)
  static StepFunction indicator(const Rational& left, const Rational& right, const Rational& value,
                                Extent extent);

  const Extent& extent() const { return extent_; }
  const std::vector<Piece>& cells() const { return cells_; }
  const Rational& tail_value() const { return tail_value_; }
  Rational tail_start() const { return cells_.empty() ? Rational(0) : cells_.back().right; }

  /// Minimal piece list for serialization: nonzero cells, plus the zero cell
  /// that separates them from a positive tail.
  std::vector<Piece> pieces() const;

  Rational operator()(const Rational& x) const;

  Rational sup() const;
  /// f*(infinity) = 0; always true for finite gamma.
  bool in_s0() const { return extent_.is_finite() || tail_value_ == 0; }
  bool is_zero() const { return cells_.empty() && tail_value_ == 0; }
  /// nullopt when the integral is infinite.
  std::optional<Rational> integral() const;

  /// Interior cell boundaries, including the tail start when positive.
  std::vector<Rational> breakpoints() const;

  /// Pieces covering [lo, hi), including the tail region; hi must not
  /// exceed a finite gamma.
  std::vector<Piece> slice(const Rational& lo, const Rational& hi) const;

  bool operator==(const StepFunction&) const = default;

 private:
  void canonicalize();

  std::vector<Piece> cells_;
  Rational tail_value_;
  Extent extent_;
};

/// m{x : f(x) > s}.
Extent distribution(const StepFunction& f, const Rational& s);

/// Decreasing right-continuous rearrangement f*. Ties are broken by source
/// order; the result does not depend on it.
StepFunction rearrange(const StepFunction& f);

/// Integral of f* over [0, t].
Rational head_integral(const StepFunction& f, const Rational& t);

/// t -> head_integral(f, t) as one concave profile.
PiecewiseLinearConcave head_integral_profile(const StepFunction& f);

/// f is submajorized by g on [0, up_to).
bool submajorizes(const StepFunction& g, const StepFunction& f, const Extent& up_to);

/// t -> f(t / factor). Throws Error(DomainOverflow) when the stretched
/// support leaves a finite domain.
StepFunction dilate(const StepFunction& f, const Rational& factor);

/// f * chi[0, t).
StepFunction truncate(const StepFunction& f, const Rational& t);

StepFunction add(const StepFunction& f, const StepFunction& g);
StepFunction max(const StepFunction& f, const StepFunction& g);
StepFunction min(const StepFunction& f, const StepFunction& g);
StepFunction scale(const StepFunction& f, const Rational& c);
/// (f - g)^+
StepFunction positive_difference(const StepFunction& f, const StepFunction& g);
/// min(f, g) = 0
bool disjoint(const StepFunction& f, const StepFunction& g);
/// Integral of f * g; nullopt when infinite.
std::optional<Rational> pairing(const StepFunction& f, const StepFunction& g);
/// f <= g everywhere.
bool pointwise_le(const StepFunction& f, const StepFunction& g);

}  // namespace rispace
