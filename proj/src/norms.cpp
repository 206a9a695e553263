#include "rispace/norms.hpp"

#include <algorithm>

#include "rispace/error.hpp"

namespace rispace {

std::string to_string(const Location& loc) {
  switch (loc.kind) {
    case Location::Kind::Point: return to_string(loc.t);
    case Location::Kind::LimitAtZero: return "limit0";
    case Location::Kind::LimitAtGamma: return "limitGamma";
    case Location::Kind::None: return "none";
  }
  return "none";
}

const Radical& NormValue::get() const {
  if (!value) throw Error(ErrorCode::InvalidArgument, "norm is infinite");
  return *value;
}

namespace {

struct Candidate {
  std::optional<Radical> value;  // nullopt: +infinity
  Location where;
};

// Largest candidate; ties go to the earliest one, so attained points (listed
// first) win over limits.
NormValue pick_max(const std::vector<Candidate>& candidates) {
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (!c.value) return NormValue::infinite(c.where);
    if (!best || *c.value > *best->value) best = &c;
  }
  return {best->value, best->where};
}

// sup of head(t) / psi(t) over 0 < t < end, or 0 < t <= end when the end
// point is attained. On every segment of the common refinement the quotient
// is monotone (piecewise-linear psi) or has no interior maximum (power law),
// so breakpoints and the two limits suffice.
NormValue sup_of_ratio(const PiecewiseLinearConcave& head, const ConcaveGauge& psi, const std::optional<Rational>& end,
                       bool end_attained) {
  std::vector<Rational> points;
  for (const auto& k : head.knots()) points.push_back(k.t);
  if (psi.is_piecewise_linear()) {
    for (const auto& k : psi.profile().knots()) points.push_back(k.t);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const auto ratio = [&](const Rational& t) { return Radical(head(t)) / eval_gauge(psi, t); };

  std::vector<Candidate> candidates;
  for (const auto& t : points) {
    if (!end || t < *end) candidates.push_back({ratio(t), Location::point(t)});
  }
  if (end && end_attained) candidates.push_back({ratio(*end), Location::point(*end)});

  // t -> 0+: H(t) -> 0, so only a vanishing psi(0+) with linear start matters.
  Radical at_zero = 0;
  if (psi.is_piecewise_linear() && psi.profile().jump() == 0) {
    at_zero = Radical(head.right_slope(0) / psi.profile().right_slope(0));
  }
  candidates.push_back({at_zero, Location::limit_at_zero()});

  if (end && !end_attained) {
    candidates.push_back({ratio(*end), Location::limit_at_gamma()});
  } else if (!end) {
    const Rational& head_slope = head.eventual_slope();
    const Rational psi_slope = psi.is_power() ? Rational(0) : psi.profile().final_slope();
    if (head_slope == 0) {
      // H is eventually constant; so is psi when its final slope vanishes.
      const bool psi_bounded = psi.is_piecewise_linear() && psi_slope == 0;
      const Rational far = points.empty() ? Rational(1) : points.back();
      candidates.push_back({psi_bounded ? ratio(far) : Radical(0), Location::limit_at_gamma()});
    } else if (psi_slope == 0) {
      candidates.push_back({std::nullopt, Location::limit_at_gamma()});
    } else {
      candidates.push_back({Radical(head_slope / psi_slope), Location::limit_at_gamma()});
    }
  }
  return pick_max(candidates);
}

void require_same_extent(const StepFunction& f, const ConcaveGauge& psi) {
  if (!(f.extent() == psi.extent())) throw Error(ErrorCode::DomainMismatch, "function and gauge domains differ");
}

}  // namespace

NormValue marcinkiewicz_norm(const StepFunction& f, const ConcaveGauge& psi) {
  require_same_extent(f, psi);
  const std::optional<Rational> end =
      psi.extent().is_finite() ? std::optional<Rational>(psi.extent().value()) : std::nullopt;
  return sup_of_ratio(head_integral_profile(f), psi, end, false);
}

NormValue natural_norm(const StepFunction& f, const ConcaveGauge& psi, const Rational& delta) {
  require_same_extent(f, psi);
  if (psi.extent().is_infinite() || delta <= 0 || delta >= psi.extent().value()) {
    throw Error(ErrorCode::InvalidArgument, "natural norm needs 0 < delta < gamma < inf");
  }
  return sup_of_ratio(head_integral_profile(f), psi, delta, true);
}

Rational natural_equivalence_constant(const ConcaveGauge& psi, const Rational& delta) {
  const auto& prof = psi.profile();
  const Rational& gamma = psi.extent().value();
  return 1 + (gamma / prof.value_at_extent()) * (prof(delta) / delta);
}

bool unit_ball_member(const StepFunction& f, const ConcaveGauge& psi) {
  require_same_extent(f, psi);
  if (psi.profile().jump() != 0) {
    throw Error(ErrorCode::HypothesisViolated, "unit-ball characterization needs psi(0+) = 0");
  }
  return submajorizes(gauge_derivative(psi), f, psi.extent());
}

NormValue lorentz_norm(const StepFunction& f, const ConcaveGauge& psi) {
  require_same_extent(f, psi);
  const auto& prof = psi.profile();
  const auto integral = pairing(rearrange(f), gauge_derivative(psi));
  if (!integral) return NormValue::infinite(Location::none());
  return {Radical(prof.jump() * f.sup() + *integral), Location::none()};
}

NormValue weak_lp_norm(const StepFunction& f, const Rational& p) {
  return marcinkiewicz_norm(f, ConcaveGauge::power(p, 1, f.extent()));
}

NormValue weak_lp_quasinorm(const StepFunction& f, const Rational& p) {
  if (p <= 1) throw Error(ErrorCode::InvalidArgument, "weak-Lp needs p > 1");
  const unsigned long P = p.get_num().get_ui();
  const unsigned long Q = p.get_den().get_ui();
  const StepFunction star = rearrange(f);
  // On a slab [a, b) of value c, t^(1/p) c increases towards c b^(1/p).
  const auto term = [&](const Rational& c, const Rational& b) {
    return Radical(pow(c, P) * pow(b, Q), static_cast<unsigned>(P));
  };
  std::vector<Candidate> candidates;
  for (const auto& c : star.cells()) candidates.push_back({term(c.value, c.right), Location::point(c.right)});
  if (star.extent().is_finite()) {
    candidates.push_back({term(star.tail_value(), star.extent().value()), Location::limit_at_gamma()});
  } else if (star.tail_value() > 0) {
    candidates.push_back({std::nullopt, Location::limit_at_gamma()});
  }
  candidates.push_back({Radical(0), Location::limit_at_zero()});
  return pick_max(candidates);
}

DiscreteFunction::DiscreteFunction(std::vector<Atom> atoms) : atoms_(std::move(atoms)), total_weight_(0) {
  for (const auto& a : atoms_) {
    if (a.weight <= 0) throw Error(ErrorCode::InvalidArgument, "atom weights must be positive");
    if (a.value < 0) throw Error(ErrorCode::InvalidArgument, "atom values must be nonnegative");
    total_weight_ += a.weight;
  }
}

StepFunction DiscreteFunction::rearrange(const Extent& gamma) const {
  if (!gamma.at_least(total_weight_)) throw Error(ErrorCode::DomainMismatch, "total weight exceeds gamma");
  std::vector<Atom> sorted = atoms_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Atom& a, const Atom& b) { return a.value > b.value; });
  std::vector<Piece> cells;
  Rational left = 0;
  for (const auto& a : sorted) {
    cells.push_back({left, left + a.weight, a.value});
    left += a.weight;
  }
  return StepFunction(std::move(cells), 0, gamma);
}

NormValue norm_on_measure(const DiscreteFunction& f, const ConcaveGauge& psi) {
  return marcinkiewicz_norm(f.rearrange(psi.extent()), psi);
}

}  // namespace rispace
