#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rispace/gauge.hpp"
#include "rispace/radical.hpp"
#include "rispace/step_function.hpp"

namespace rispace {

/// Where a supremum is attained or approached.
struct Location {
  enum class Kind { Point, LimitAtZero, LimitAtGamma, None };

  Kind kind = Kind::None;
  Rational t;

  static Location point(const Rational& t) { return {Kind::Point, t}; }
  static Location limit_at_zero() { return {Kind::LimitAtZero, 0}; }
  static Location limit_at_gamma() { return {Kind::LimitAtGamma, 0}; }
  static Location none() { return {}; }

  bool operator==(const Location&) const = default;
};

/// `p/q`, `limit0`, `limitGamma` or `none`.
std::string to_string(const Location& loc);

/// Norm value: exact (a radical, rational for piecewise-linear gauges) or
/// infinite when the function lies outside the space.
struct NormValue {
  std::optional<Radical> value;
  Location attained_at;

  static NormValue infinite(Location where) { return {std::nullopt, where}; }

  bool finite() const { return value.has_value(); }
  /// Throws Error(InvalidArgument) when infinite.
  const Radical& get() const;
  Enclosure enclose(unsigned precision = kDefaultPrecision) const { return get().enclose(precision); }
};

/// sup over 0 < t < gamma of H_f(t) / psi(t).
NormValue marcinkiewicz_norm(const StepFunction& f, const ConcaveGauge& psi);

/// sup over 0 < t <= delta of H_f(t) / psi(t); requires 0 < delta < gamma < inf.
NormValue natural_norm(const StepFunction& f, const ConcaveGauge& psi, const Rational& delta);

/// The constant C with ||f|| <= C ||f||^natural, namely
/// 1 + (gamma / psi(gamma)) * (psi(delta) / delta). Piecewise-linear only.
Rational natural_equivalence_constant(const ConcaveGauge& psi, const Rational& delta);

/// f lies in the closed unit ball, decided by submajorization against psi'.
/// Requires a piecewise-linear gauge with psi(0+) = 0.
bool unit_ball_member(const StepFunction& f, const ConcaveGauge& psi);

/// psi(0+) sup f + integral of f* psi'. Piecewise-linear only.
NormValue lorentz_norm(const StepFunction& f, const ConcaveGauge& psi);

/// Marcinkiewicz norm for psi(t) = t^(1 - 1/p) on f's domain.
NormValue weak_lp_norm(const StepFunction& f, const Rational& p);
/// sup_t t^(1/p) f*(t); the location is the breakpoint approached from the left.
NormValue weak_lp_quasinorm(const StepFunction& f, const Rational& p);

/// Function on a finite discrete measure space: atoms with positive weights.
struct Atom {
  Rational weight;
  Rational value;
};

class DiscreteFunction {
 public:
  DiscreteFunction(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Rational& total_weight() const { return total_weight_; }

  /// Decreasing rearrangement on (0, gamma), extended by zero past the total weight.
  StepFunction rearrange(const Extent& gamma) const;

 private:
  std::vector<Atom> atoms_;
  Rational total_weight_;
};

/// ||f||_{M_psi(mu)} = ||f*||_{M_psi(0, gamma)}.
NormValue norm_on_measure(const DiscreteFunction& f, const ConcaveGauge& psi);

}  // namespace rispace
