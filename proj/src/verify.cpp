#include "rispace/verify.hpp"

#include <algorithm>

#include "rispace/error.hpp"
#include "rispace/text_format.hpp"

namespace rispace {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "yes";
    case Outcome::Violated: return "no";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string CheckResult::note(const std::string& key) const {
  for (const auto& [k, v] : notes) {
    if (k == key) return v;
  }
  return {};
}

namespace {

// One instance of lhs <= rhs.
struct Comparison {
  Radical lhs;
  Radical rhs;
  Location where;
};

// lhs_a / rhs_a < lhs_b / rhs_b, with x/0 = +inf for x > 0 and 0/0 = 0.
bool ratio_less(const Comparison& a, const Comparison& b) {
  const bool a_inf = a.rhs.is_zero() && !a.lhs.is_zero();
  const bool b_inf = b.rhs.is_zero() && !b.lhs.is_zero();
  if (a_inf || b_inf) return !a_inf && b_inf;
  if (a.lhs.is_zero()) return !b.lhs.is_zero();
  if (b.lhs.is_zero()) return false;
  return a.lhs * b.rhs < b.lhs * a.rhs;
}

CheckResult decide(std::string name, std::string instance, const std::vector<Comparison>& comparisons,
                   unsigned precision = kDefaultPrecision) {
  CheckResult out;
  out.name = std::move(name);
  out.instance = std::move(instance);
  if (comparisons.empty()) {
    out.witness = Location::none();
    return out;
  }
  const Comparison* worst = &comparisons.front();
  bool holds = true;
  for (const auto& c : comparisons) {
    if (c.lhs > c.rhs) holds = false;
    if (ratio_less(*worst, c)) worst = &c;
  }
  out.outcome = holds ? Outcome::Holds : Outcome::Violated;
  out.witness = worst->where;
  out.margin = worst->rhs.enclose(precision) - worst->lhs.enclose(precision);
  return out;
}

[[noreturn]] void premise_violated(const std::string& what) { throw Error(ErrorCode::PremiseViolated, what); }

// lower <= upper on [0, alpha), sampled where the difference can peak.
std::vector<Comparison> profile_comparisons(const PiecewiseLinearConcave& lower, const PiecewiseLinearConcave& upper,
                                            const Extent& alpha) {
  std::vector<Rational> points;
  for (const auto* p : {&lower, &upper}) {
    for (const auto& k : p->knots()) points.push_back(k.t);
    if (p->extent().is_finite()) points.push_back(p->extent().value());
  }
  if (alpha.is_finite()) points.push_back(alpha.value());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Comparison> out;
  for (const auto& t : points) {
    if (t <= 0 || (alpha.is_finite() && t > alpha.value())) continue;
    out.push_back({Radical(lower(t)), Radical(upper(t)), Location::point(t)});
  }
  if (alpha.is_infinite() && lower.eventual_slope() > 0) {
    out.push_back({Radical(lower.eventual_slope()), Radical(upper.eventual_slope()), Location::limit_at_gamma()});
  }
  return out;
}

std::string instance_text(std::initializer_list<const StepFunction*> fns, const ConcaveGauge* psi,
                          std::initializer_list<std::pair<const char*, std::string>> params) {
  std::string out;
  for (const auto* f : fns) out += "[function]\n" + serialize(*f);
  if (psi) out += "[gauge]\n" + serialize(*psi);
  for (const auto& [k, v] : params) out += std::string(k) + " = " + v + "\n";
  return out;
}

Radical require_finite(const NormValue& n, const char* what) {
  if (!n.finite()) throw Error(ErrorCode::NormInfinite, what);
  return n.get();
}

}  // namespace

CheckResult check_superadditivity(const StepFunction& f1, const StepFunction& f2, const Rational& t1,
                                  const Rational& t2) {
  if (!(f1.extent() == f2.extent())) throw Error(ErrorCode::DomainMismatch, "functions live on different domains");
  if (t1 < 0 || t2 < 0) throw Error(ErrorCode::InvalidArgument, "lengths must be nonnegative");
  const auto h1 = head_integral_profile(f1);
  const auto h2 = head_integral_profile(f2);
  const auto h12 = head_integral_profile(add(f1, f2));
  return decide("superadditivity",
                instance_text({&f1, &f2}, nullptr, {{"t1", to_string(t1)}, {"t2", to_string(t2)}}),
                {{Radical(h1(t1) + h2(t2)), Radical(h12(t1 + t2)), Location::point(t1 + t2)}});
}

CheckResult check_disjoint_dilation(const StepFunction& u, const StepFunction& v, const StepFunction& f,
                                    const Extent& alpha) {
  if (!(u.extent() == v.extent())) premise_violated("u and v live on different domains");
  if (!disjoint(u, v)) premise_violated("u and v are not disjoint");
  if (!submajorizes(f, u, alpha) || !submajorizes(f, v, alpha)) premise_violated("u or v not submajorized by f");
  // On a finite domain only the part of f* below gamma/2 survives the dilation.
  StepFunction star = rearrange(f);
  if (f.extent().is_finite()) star = truncate(star, f.extent().value() / 2);
  const StepFunction dilated = dilate(star, 2);
  return decide("disjoint_dilation", instance_text({&u, &v, &f}, nullptr, {{"alpha", to_string(alpha)}}),
                profile_comparisons(head_integral_profile(add(u, v)), head_integral_profile(dilated), alpha));
}

CheckResult check_pointwise_bound(const StepFunction& f, const ConcaveGauge& psi) {
  const Radical norm = require_finite(marcinkiewicz_norm(f, psi), "f is not in M_psi");
  const StepFunction star = rearrange(f);
  std::vector<Comparison> cmps;
  // Psi is decreasing, so on a slab [a, b) the binding point is b.
  for (const auto& c : star.cells()) {
    cmps.push_back({Radical(c.value), norm * big_psi_eval(psi, c.right), Location::point(c.right)});
  }
  cmps.push_back({Radical(star.tail_value()), norm * big_psi_at_extent(psi), Location::limit_at_gamma()});
  auto out = decide("pointwise_bound", instance_text({&f}, &psi, {}), cmps);
  out.notes.emplace_back("norm", norm.to_string());
  return out;
}

CheckResult check_natural_sandwich(const StepFunction& f, const ConcaveGauge& psi, const Rational& delta) {
  if (!psi.is_piecewise_linear()) throw Error(ErrorCode::UnsupportedBackend, "sandwich check is exact for PL gauges");
  const auto natural = natural_norm(f, psi, delta);
  const auto plain = marcinkiewicz_norm(f, psi);
  const Radical n_nat = require_finite(natural, "natural norm infinite");
  const Radical n = require_finite(plain, "norm infinite");
  const Rational c = natural_equivalence_constant(psi, delta);
  auto out = decide("natural_sandwich", instance_text({&f}, &psi, {{"delta", to_string(delta)}}),
                    {{n_nat, n, natural.attained_at}, {n, Radical(c) * n_nat, plain.attained_at}});
  out.notes.emplace_back("natural", n_nat.to_string());
  out.notes.emplace_back("norm", n.to_string());
  out.notes.emplace_back("constant", to_string(c));
  return out;
}

CheckResult check_psi_integral_bound(const ConcaveGauge& psi, const ConditionReport& report, const Rational& t,
                                     unsigned precision) {
  if (report.verdict == Condition::Neither || !report.beta) premise_violated("gauge satisfies neither (A) nor (B)");
  if (report.verdict == Condition::B && t > *report.delta) premise_violated("t exceeds delta");
  if (t <= 0 || !psi.extent().exceeds(t)) premise_violated("t outside (0, gamma)");

  const Enclosure lhs = big_psi_head_integral(psi, t, precision);
  const Radical value = eval_gauge(psi, t);
  Enclosure rhs;
  bool resolved = true;
  if (report.beta->is_rational() && value.is_rational()) {
    rhs = Enclosure::exact(value.rational() / (report.beta->rational() - 1));
  } else {
    const Enclosure beta_minus_one = report.beta->enclose(precision) - Enclosure::exact(1);
    if (beta_minus_one.lo <= 0) {
      resolved = false;
      rhs = {0, 0};
    } else {
      rhs = value.enclose(precision) / beta_minus_one;
    }
  }

  CheckResult out;
  out.name = "psi_integral_bound";
  out.instance = instance_text({}, &psi, {{"t", to_string(t)}});
  out.witness = Location::point(t);
  out.margin = rhs - lhs;
  if (!resolved) {
    out.outcome = Outcome::Inconclusive;
  } else if (lhs.hi <= rhs.lo) {
    out.outcome = Outcome::Holds;
  } else if (lhs.lo > rhs.hi) {
    out.outcome = Outcome::Violated;
  } else {
    out.outcome = Outcome::Inconclusive;
  }
  out.notes.emplace_back("lhs", to_string(lhs));
  out.notes.emplace_back("rhs", to_string(rhs));
  out.notes.emplace_back("beta", report.beta->to_string());
  return out;
}

CheckResult check_transport_bound(const StepFunction& f, const ConcaveGauge& psi) {
  const auto report = classify(psi);
  if (report.verdict == Condition::Neither) premise_violated("gauge satisfies neither (A) nor (B)");
  const auto norm_value = marcinkiewicz_norm(f, psi);
  if (!norm_value.finite()) premise_violated("f is not in M_psi");
  const Radical norm = norm_value.get();

  const TransportMap sigma = transport_to_rearrangement(f);
  const StepFunction star = rearrange(f);
  const bool s0 = f.in_s0();
  const Rational floor_level = s0 ? Rational(0) : f.tail_value();

  // Pieces of f that lie at or above f*(inf) are reproduced exactly.
  const StepFunction pulled_back = apply_transport(sigma, star);
  const StepFunction floor_fn = StepFunction::constant(floor_level, f.extent());
  const bool exact = pulled_back == max(f, floor_fn) && pointwise_le(f, pulled_back);

  const StepFunction f1 = positive_difference(f, floor_fn);
  const Radical norm1 = s0 ? norm : require_finite(marcinkiewicz_norm(f1, psi), "f1 not in M_psi");

  std::vector<Comparison> cmps;
  std::optional<Radical> achieved = Radical(0);
  for (const auto& seg : sigma.segments()) {
    const Rational value = f(seg.left);
    const Radical psi_at = seg.right ? big_psi_eval(psi, *seg.right + seg.offset) : big_psi_at_extent(psi);
    const Location where = seg.right ? Location::point(seg.left) : Location::limit_at_gamma();
    if (value > 0) {
      const Radical bound = norm * psi_at;
      if (bound.is_zero()) {
        achieved.reset();
      } else if (achieved) {
        achieved = std::max(*achieved, Radical(value) / bound);
      }
    }
    if (s0) {
      cmps.push_back({Radical(value), Radical(4) * norm * psi_at, where});
    } else {
      cmps.push_back({Radical(max(Rational(value - floor_level), Rational(0))), Radical(4) * norm1 * psi_at, where});
      cmps.push_back({Radical(min(value, floor_level)), norm * psi_at, where});
      cmps.push_back({Radical(value), Radical(5) * norm * psi_at, where});
    }
  }
  auto out = decide("transport_bound", instance_text({&f}, &psi, {}), cmps);
  out.notes.emplace_back("branch", s0 ? "S0" : "general");
  out.notes.emplace_back("stated_constant", s0 ? "4" : "5");
  out.notes.emplace_back("achieved_constant", achieved ? achieved->to_string() : "inf");
  out.notes.emplace_back("exact_transport", exact ? "yes" : "no");
  return out;
}

CheckResult check_quasi_uniform_convexity(const StepFunction& u, const StepFunction& v, const ConcaveGauge& psi) {
  const auto report = classify(psi);
  if (report.verdict == Condition::Neither) premise_violated("gauge satisfies neither (A) nor (B)");
  if (!disjoint(u, v)) premise_violated("u and v are not disjoint");
  const bool natural = report.verdict == Condition::B;
  const auto norm = [&](const StepFunction& g) {
    return natural ? natural_norm(g, psi, *report.delta) : marcinkiewicz_norm(g, psi);
  };
  const auto nu = norm(u);
  const auto nv = norm(v);
  if (!nu.finite() || !nv.finite() || nu.get() > Radical(1) || nv.get() > Radical(1)) {
    premise_violated("u and v must lie in the unit ball");
  }
  const auto half = norm(scale(add(u, v), Rational(1, 2)));
  const Radical& beta = *report.beta;

  Radical dilated_norm;
  if (psi.is_piecewise_linear()) {
    StepFunction derivative = gauge_derivative(psi);
    if (psi.extent().is_finite()) derivative = truncate(derivative, psi.extent().value() / 2);
    dilated_norm = require_finite(norm(dilate(derivative, 2)), "D2 psi' not in M_psi");
  } else {
    // H of D2 psi' is 2 psi(t/2), so the quotient is constant in t.
    const Rational t0 = natural ? *report.delta : Rational(1);
    dilated_norm = Radical(2) * eval_gauge(psi, t0 / 2) / eval_gauge(psi, t0);
  }

  auto out = decide("quasi_uniform_convexity",
                    instance_text({&u, &v}, &psi, {}),
                    {{require_finite(half, "half sum not in M_psi"), Radical(1) / beta, half.attained_at},
                     {dilated_norm, Radical(2) / beta, Location::none()}});
  out.notes.emplace_back("mode", natural ? "natural" : "plain");
  out.notes.emplace_back("half_norm", half.get().to_string());
  out.notes.emplace_back("dilated_derivative_norm", dilated_norm.to_string());
  out.notes.emplace_back("beta", beta.to_string());
  return out;
}

CheckResult check_holder(const StepFunction& f, const StepFunction& g, const ConcaveGauge& psi) {
  if (!psi.is_piecewise_linear()) throw Error(ErrorCode::UnsupportedBackend, "Lorentz norm needs a PL gauge");
  const auto pair = pairing(f, g);
  const Radical nf = require_finite(marcinkiewicz_norm(f, psi), "f is not in M_psi");
  const Radical ng = require_finite(lorentz_norm(g, psi), "g is not in the Lorentz space");
  if (!pair) throw Error(ErrorCode::NormInfinite, "pairing diverges");
  auto out = decide("holder", instance_text({&f, &g}, &psi, {}), {{Radical(*pair), nf * ng, Location::none()}});
  out.notes.emplace_back("pairing", to_string(*pair));
  out.notes.emplace_back("marcinkiewicz", nf.to_string());
  out.notes.emplace_back("lorentz", ng.to_string());
  return out;
}

ConcaveGauge remark_gauge() {
  return ConcaveGauge(PiecewiseLinearConcave(0, {{Rational(1, 2), 1}}, 0, Extent(1)));
}

std::vector<CheckResult> remark_counterexample(const ConcaveGauge& psi) {
  if (!(psi.extent() == Extent(1))) throw Error(ErrorCode::DomainMismatch, "the counterexample lives on (0, 1)");
  const bool asserted = psi == remark_gauge();
  const Extent unit(1);
  const StepFunction u = StepFunction::indicator(0, Rational(1, 2), 2, unit);
  const StepFunction v = StepFunction::indicator(Rational(1, 2), 1, 2, unit);
  const StepFunction half = scale(add(u, v), Rational(1, 2));
  const StepFunction chi = StepFunction::constant(1, unit);
  const std::string inst = instance_text({&u, &v}, &psi, {});

  std::vector<CheckResult> out;
  const auto equality = [&](const char* name, const NormValue& n, const Rational& expected) {
    CheckResult r;
    r.name = name;
    r.instance = inst;
    r.witness = n.attained_at;
    r.notes.emplace_back("value", n.finite() ? n.get().to_string() : "inf");
    if (asserted) {
      const bool ok = n.finite() && n.get() == Radical(expected);
      r.outcome = ok ? Outcome::Holds : Outcome::Violated;
      r.margin = n.finite() ? Enclosure::exact(expected) - n.enclose() : Enclosure::exact(0);
      r.notes.emplace_back("expected", to_string(expected));
    } else {
      r.notes.emplace_back("asserted", "no");
    }
    out.push_back(std::move(r));
  };

  equality("remark.norm_u", marcinkiewicz_norm(u, psi), 1);
  equality("remark.norm_v", marcinkiewicz_norm(v, psi), 1);
  equality("remark.norm_half_sum", marcinkiewicz_norm(half, psi), 1);
  equality("remark.norm_indicator", marcinkiewicz_norm(chi, psi), 1);

  CheckResult same;
  same.name = "remark.half_sum_is_indicator";
  same.instance = inst;
  same.outcome = half == chi ? Outcome::Holds : Outcome::Violated;
  out.push_back(std::move(same));

  const auto report = classify(psi);
  CheckResult cls;
  cls.name = "remark.classify";
  cls.instance = inst;
  cls.notes.emplace_back("verdict", to_string(report.verdict));
  cls.notes.emplace_back("grothendieck", report.grothendieck ? "yes" : "no");
  if (asserted) {
    const bool ok = report.verdict == Condition::B && report.grothendieck && report.beta == Radical(2) &&
                    report.delta == Rational(1, 4);
    cls.outcome = ok ? Outcome::Holds : Outcome::Violated;
  } else {
    cls.notes.emplace_back("asserted", "no");
  }
  out.push_back(std::move(cls));

  if (report.verdict == Condition::B) {
    // The plain norm is not quasi-uniformly convex here, the natural one is.
    const Radical inv_beta = Radical(1) / *report.beta;
    const auto plain = marcinkiewicz_norm(half, psi);
    CheckResult plain_fails;
    plain_fails.name = "remark.plain_norm_exceeds_inverse_beta";
    plain_fails.instance = inst;
    plain_fails.witness = plain.attained_at;
    plain_fails.margin = plain.enclose() - inv_beta.enclose();
    plain_fails.outcome = plain.get() > inv_beta ? Outcome::Holds : Outcome::Violated;
    plain_fails.notes.emplace_back("value", plain.get().to_string());
    if (!asserted) {
      plain_fails.notes.emplace_back("asserted", "no");
      plain_fails.outcome = Outcome::Holds;
    }
    out.push_back(std::move(plain_fails));

    const auto nat = natural_norm(half, psi, *report.delta);
    CheckResult nat_ok;
    nat_ok.name = "remark.natural_half_sum_bound";
    nat_ok.instance = inst;
    nat_ok.witness = nat.attained_at;
    nat_ok.margin = inv_beta.enclose() - nat.enclose();
    nat_ok.outcome = nat.get() <= inv_beta ? Outcome::Holds : Outcome::Violated;
    nat_ok.notes.emplace_back("value", nat.get().to_string());
    nat_ok.notes.emplace_back("delta", to_string(*report.delta));
    if (!asserted) {
      nat_ok.notes.emplace_back("asserted", "no");
      nat_ok.outcome = Outcome::Holds;
    }
    out.push_back(std::move(nat_ok));
  }
  return out;
}

}  // namespace rispace
