#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rispace/concave_profile.hpp"
#include "rispace/radical.hpp"
#include "rispace/step_function.hpp"

namespace rispace {

/// psi(t) = coefficient * t^(1 - 1/p), p > 1.
struct PowerLaw {
  Rational p;
  Rational coefficient;

  bool operator==(const PowerLaw&) const = default;
};

/// Non-zero increasing concave gauge psi on (0, gamma), continuous on
/// (0, gamma) with psi(0) = 0; a jump psi(0+) > 0 is allowed for the
/// piecewise-linear backend.
class ConcaveGauge {
 public:
  explicit ConcaveGauge(PiecewiseLinearConcave profile);
  ConcaveGauge(PowerLaw power, Extent extent);

  static ConcaveGauge power(const Rational& p, const Rational& coefficient, Extent extent) {
    return ConcaveGauge(PowerLaw{p, coefficient}, std::move(extent));
  }

  const Extent& extent() const { return extent_; }
  bool is_piecewise_linear() const { return std::holds_alternative<PiecewiseLinearConcave>(backend_); }
  bool is_power() const { return std::holds_alternative<PowerLaw>(backend_); }
  /// Throws Error(UnsupportedBackend) for the other backend.
  const PiecewiseLinearConcave& profile() const;
  const PowerLaw& power_law() const;

  /// psi(0+).
  Rational jump() const;

  bool operator==(const ConcaveGauge&) const = default;

 private:
  std::variant<PiecewiseLinearConcave, PowerLaw> backend_;
  Extent extent_;
};

/// psi(t) for 0 < t < gamma (t = gamma allowed as the limit value). Exact:
/// rational for piecewise-linear gauges, a radical for power laws.
Radical eval_gauge(const ConcaveGauge& psi, const Rational& t);
/// Certified enclosure of psi(t), width at most 2^-precision.
Enclosure eval_gauge_enclosure(const ConcaveGauge& psi, const Rational& t, unsigned precision = kDefaultPrecision);

/// Step function of segment slopes. Piecewise-linear backend only.
StepFunction gauge_derivative(const ConcaveGauge& psi);

/// Psi(t) = psi(t) / t.
Radical big_psi_eval(const ConcaveGauge& psi, const Rational& t);
/// lim Psi(t) as t -> gamma (Psi(gamma) for finite gamma, the final slope or
/// 0 on (0, inf)).
Radical big_psi_at_extent(const ConcaveGauge& psi);

/// Enclosure of the integral of Psi over (0, t].
Enclosure big_psi_head_integral(const ConcaveGauge& psi, const Rational& t, unsigned precision = kDefaultPrecision);

enum class Monotonicity { Constant, Increasing, Decreasing };

/// One segment of t -> psi(2t)/psi(t) between consecutive breakpoints.
struct RatioSegment {
  Rational left;
  std::optional<Rational> right;  // nullopt: unbounded
  Radical value_left;             // value (or right-limit) at left
  Radical value_right;            // value (or left-limit) at right; the limit at infinity when unbounded
  Monotonicity trend;
};

/// Exact description of t -> psi(2t)/psi(t) on (0, gamma/2), or (0, inf).
struct RatioProfile {
  ConcaveGauge gauge;
  std::vector<RatioSegment> segments;
  Radical limit_at_zero;
  Radical limit_at_end;  // at gamma/2 from the left, or at infinity
  bool unbounded;

  /// Infimum over (0, up_to]; over the whole domain when up_to is nullopt.
  Radical infimum(const std::optional<Rational>& up_to = std::nullopt) const;
  /// Ratio at an interior point.
  Radical at(const Rational& t) const;
};

RatioProfile doubling_profile(const ConcaveGauge& psi);

enum class Condition { A, B, Neither };
const char* to_string(Condition c);

struct ConditionReport {
  Condition verdict = Condition::Neither;
  std::optional<Radical> beta;
  std::optional<Rational> delta;
  Radical liminf_at_zero;
  std::optional<Radical> liminf_at_infinity;  // only for gamma = inf
  bool bounded_at_infinity = false;           // gamma = inf and psi eventually constant
  bool grothendieck = false;
};

ConditionReport classify(const ConcaveGauge& psi);

}  // namespace rispace
