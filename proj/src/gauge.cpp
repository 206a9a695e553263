#include "rispace/gauge.hpp"

#include <algorithm>

#include "rispace/error.hpp"

namespace rispace {

namespace {

// p = P/Q in lowest terms; the exponent 1 - 1/p is (P - Q)/P.
struct Exponent {
  unsigned long P;
  unsigned long Q;
};

Exponent exponent_of(const PowerLaw& law) {
  if (!law.p.get_num().fits_ulong_p() || !law.p.get_den().fits_ulong_p()) {
    throw Error(ErrorCode::InvalidArgument, "power-law exponent too large");
  }
  return {law.p.get_num().get_ui(), law.p.get_den().get_ui()};
}

void require_in_domain(const ConcaveGauge& psi, const Rational& t) {
  if (t <= 0 || !psi.extent().at_least(t)) throw Error(ErrorCode::OutOfDomain, "argument outside (0, gamma)");
}

}  // namespace

ConcaveGauge::ConcaveGauge(PiecewiseLinearConcave profile) : backend_(std::move(profile)), extent_(0) {
  extent_ = std::get<PiecewiseLinearConcave>(backend_).extent();
  if (std::get<PiecewiseLinearConcave>(backend_).is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "gauge must not vanish identically");
  }
}

ConcaveGauge::ConcaveGauge(PowerLaw power, Extent extent) : backend_(std::move(power)), extent_(std::move(extent)) {
  const auto& law = std::get<PowerLaw>(backend_);
  if (law.p <= 1) throw Error(ErrorCode::InvalidArgument, "power-law gauge needs p > 1");
  if (law.coefficient <= 0) throw Error(ErrorCode::InvalidArgument, "power-law coefficient must be positive");
  if (extent_.is_finite() && extent_.value() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "domain must have positive length");
  }
  (void)exponent_of(law);
}

const PiecewiseLinearConcave& ConcaveGauge::profile() const {
  if (!is_piecewise_linear()) throw Error(ErrorCode::UnsupportedBackend, "gauge is not piecewise linear");
  return std::get<PiecewiseLinearConcave>(backend_);
}

const PowerLaw& ConcaveGauge::power_law() const {
  if (!is_power()) throw Error(ErrorCode::UnsupportedBackend, "gauge is not a power law");
  return std::get<PowerLaw>(backend_);
}

Rational ConcaveGauge::jump() const { return is_power() ? Rational(0) : profile().jump(); }

Radical eval_gauge(const ConcaveGauge& psi, const Rational& t) {
  require_in_domain(psi, t);
  if (psi.is_piecewise_linear()) return Radical(psi.profile()(t));
  const auto& law = psi.power_law();
  const auto [P, Q] = exponent_of(law);
  return Radical(pow(law.coefficient, P) * pow(t, P - Q), static_cast<unsigned>(P));
}

Enclosure eval_gauge_enclosure(const ConcaveGauge& psi, const Rational& t, unsigned precision) {
  return eval_gauge(psi, t).enclose(precision);
}

StepFunction gauge_derivative(const ConcaveGauge& psi) {
  const auto& prof = psi.profile();
  const auto slopes = prof.slopes();
  std::vector<Piece> cells;
  Rational left = 0;
  for (std::size_t i = 0; i < prof.knots().size(); ++i) {
    cells.push_back({left, prof.knots()[i].t, slopes[i]});
    left = prof.knots()[i].t;
  }
  return StepFunction(std::move(cells), prof.final_slope(), psi.extent());
}

Radical big_psi_eval(const ConcaveGauge& psi, const Rational& t) { return eval_gauge(psi, t) / Radical(t); }

Radical big_psi_at_extent(const ConcaveGauge& psi) {
  if (psi.extent().is_finite()) return big_psi_eval(psi, psi.extent().value());
  return psi.is_power() ? Radical(0) : Radical(psi.profile().final_slope());
}

Enclosure big_psi_head_integral(const ConcaveGauge& psi, const Rational& t, unsigned precision) {
  require_in_domain(psi, t);
  if (psi.is_power()) {
    const auto [P, Q] = exponent_of(psi.power_law());
    // Antiderivative of c s^(-1/p) is c s^(1-1/p) / (1 - 1/p).
    return (eval_gauge(psi, t) * Radical(Rational(P, P - Q))).enclose(precision);
  }
  const auto& prof = psi.profile();
  if (prof.jump() > 0) throw Error(ErrorCode::DivergentIntegral, "Psi is not integrable at 0 when psi(0+) > 0");

  const auto slopes = prof.slopes();
  // A few extra bits so the summed rounding errors stay within 2^-precision.
  const unsigned inner = precision + 8;
  Enclosure total = Enclosure::exact(0);
  Rational left = 0;
  Rational left_value = 0;
  for (std::size_t i = 0; i <= prof.knots().size() && left < t; ++i) {
    const Rational right = i < prof.knots().size() ? min(prof.knots()[i].t, t) : t;
    const Rational& slope = slopes[i];
    // On this segment psi(s) = slope * s + intercept with intercept >= 0.
    const Rational intercept = left_value - slope * left;
    total = total + Enclosure::exact(slope * (right - left));
    if (intercept != 0) {
      total = total + Enclosure::exact(intercept) * log_enclosure(right / left, inner);
    }
    left_value = prof(right);
    left = right;
  }
  return total;
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::A: return "A";
    case Condition::B: return "B";
    case Condition::Neither: return "NEITHER";
  }
  return "?";
}

Radical RatioProfile::at(const Rational& t) const { return eval_gauge(gauge, 2 * t) / eval_gauge(gauge, t); }

Radical RatioProfile::infimum(const std::optional<Rational>& up_to) const {
  Radical best = limit_at_zero;
  for (const auto& s : segments) {
    if (up_to && s.left > *up_to) break;
    if (s.left > 0) best = std::min(best, s.value_left);
    if (up_to && (!s.right || *s.right > *up_to)) {
      best = std::min(best, at(*up_to));
      return best;
    }
    best = std::min(best, s.value_right);
  }
  return best;
}

RatioProfile doubling_profile(const ConcaveGauge& psi) {
  const bool unbounded = psi.extent().is_infinite();
  const std::optional<Rational> end =
      unbounded ? std::nullopt : std::optional<Rational>(psi.extent().value() / 2);

  if (psi.is_power()) {
    const auto [P, Q] = exponent_of(psi.power_law());
    const Radical constant = Radical::power_of_two(Rational(P - Q, P));
    return RatioProfile{psi, {{0, end, constant, constant, Monotonicity::Constant}}, constant, constant, unbounded};
  }

  const auto& prof = psi.profile();
  std::vector<Rational> cuts;
  for (const auto& k : prof.knots()) {
    for (const Rational& c : {k.t, Rational(k.t / 2)}) {
      if (!end || c < *end) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto ratio = [&](const Rational& t) { return Radical(prof(2 * t) / prof(t)); };
  const Radical at_zero = prof.jump() > 0 ? Radical(1) : Radical(2);
  Radical at_end = 1;
  if (end) {
    at_end = Radical(prof.value_at_extent() / prof(*end));
  } else if (prof.final_slope() > 0) {
    at_end = Radical(2);
  }

  RatioProfile out{psi, {}, at_zero, at_end, unbounded};
  Rational left = 0;
  Radical left_value = at_zero;
  auto push = [&](const std::optional<Rational>& right, const Radical& right_value) {
    const auto trend = left_value == right_value
                           ? Monotonicity::Constant
                           : (left_value < right_value ? Monotonicity::Increasing : Monotonicity::Decreasing);
    out.segments.push_back({left, right, left_value, right_value, trend});
  };
  for (const auto& c : cuts) {
    const Radical v = ratio(c);
    push(c, v);
    left = c;
    left_value = v;
  }
  push(end, at_end);
  return out;
}

ConditionReport classify(const ConcaveGauge& psi) {
  const RatioProfile profile = doubling_profile(psi);
  ConditionReport report;
  report.liminf_at_zero = profile.limit_at_zero;

  if (psi.extent().is_infinite()) {
    report.liminf_at_infinity = profile.limit_at_end;
    report.bounded_at_infinity = psi.is_piecewise_linear() && psi.profile().final_slope() == 0;
    if (profile.limit_at_zero > Radical(1) && profile.limit_at_end > Radical(1)) {
      const Radical beta = profile.infimum();
      if (beta > Radical(1)) {
        report.verdict = Condition::A;
        report.beta = beta;
      }
    }
  } else if (profile.limit_at_zero > Radical(1)) {
    const Rational quarter = psi.extent().value() / 4;
    std::optional<Rational> delta;
    if (profile.infimum(quarter) > Radical(1)) {
      delta = quarter;
    } else {
      for (const auto& s : profile.segments) {
        if (s.left > 0 && s.left <= quarter && s.value_left > Radical(1)) delta = s.left;
      }
    }
    if (delta) {
      report.verdict = Condition::B;
      report.delta = delta;
      report.beta = profile.infimum(delta);
    }
  }
  report.grothendieck = report.verdict != Condition::Neither;
  return report;
}

}  // namespace rispace
