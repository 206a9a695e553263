#include "rispace/concave_profile.hpp"

#include <algorithm>

#include "rispace/error.hpp"

namespace rispace {

PiecewiseLinearConcave::PiecewiseLinearConcave(Rational jump, std::vector<Knot> knots, Rational final_slope,
                                               Extent extent)
    : jump_(std::move(jump)), knots_(std::move(knots)), final_slope_(std::move(final_slope)),
      extent_(std::move(extent)) {
  if (extent_.is_finite() && extent_.value() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "profile domain must have positive length");
  }
  if (jump_ < 0) throw Error(ErrorCode::InvalidArgument, "negative value at 0+");
  if (final_slope_ < 0) throw Error(ErrorCode::InvalidArgument, "negative final slope");

  Rational prev_t = 0;
  for (const auto& k : knots_) {
    if (k.t <= prev_t) throw Error(ErrorCode::InvalidArgument, "knots must be strictly increasing and positive");
    if (!extent_.at_least(k.t)) throw Error(ErrorCode::InvalidArgument, "knot beyond the domain");
    prev_t = k.t;
  }

  // Fold a knot sitting on a finite gamma into the final slope.
  if (!knots_.empty() && extent_.is_finite() && knots_.back().t == extent_.value()) {
    const Rational prev_t2 = knots_.size() > 1 ? knots_[knots_.size() - 2].t : Rational(0);
    const Rational prev_v = knots_.size() > 1 ? knots_[knots_.size() - 2].value : jump_;
    final_slope_ = (knots_.back().value - prev_v) / (knots_.back().t - prev_t2);
    knots_.pop_back();
  }

  const auto s = slopes();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) throw Error(ErrorCode::InvalidArgument, "profile must be increasing");
    if (i > 0 && s[i] > s[i - 1]) throw Error(ErrorCode::InvalidArgument, "profile must be concave");
  }

  // Drop collinear knots.
  std::vector<Knot> kept;
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (s[i] != s[i + 1]) kept.push_back(knots_[i]);
  }
  knots_ = std::move(kept);
}

std::vector<Rational> PiecewiseLinearConcave::slopes() const {
  std::vector<Rational> out;
  out.reserve(knots_.size() + 1);
  Rational t = 0;
  Rational v = jump_;
  for (const auto& k : knots_) {
    out.push_back((k.value - v) / (k.t - t));
    t = k.t;
    v = k.value;
  }
  out.push_back(final_slope_);
  return out;
}

Rational PiecewiseLinearConcave::operator()(const Rational& t_in) const {
  if (t_in < 0) throw Error(ErrorCode::OutOfDomain, "negative argument");
  const Rational t = extent_.is_finite() ? min(t_in, extent_.value()) : t_in;
  auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                             [](const Knot& k, const Rational& x) { return k.t < x; });
  if (it != knots_.end() && it->t == t) return it->value;
  if (it == knots_.end()) {
    const Rational t0 = knots_.empty() ? Rational(0) : knots_.back().t;
    const Rational v0 = knots_.empty() ? jump_ : knots_.back().value;
    return v0 + final_slope_ * (t - t0);
  }
  const Rational t0 = it == knots_.begin() ? Rational(0) : std::prev(it)->t;
  const Rational v0 = it == knots_.begin() ? jump_ : std::prev(it)->value;
  return v0 + (it->value - v0) * (t - t0) / (it->t - t0);
}

Rational PiecewiseLinearConcave::value_at_extent() const { return (*this)(extent_.value()); }

Rational PiecewiseLinearConcave::right_slope(const Rational& t) const {
  if (extent_.is_finite() && t >= extent_.value()) return 0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](const Rational& x, const Knot& k) { return x < k.t; });
  const auto idx = static_cast<std::size_t>(it - knots_.begin());
  return slopes()[idx];
}

Rational PiecewiseLinearConcave::eventual_slope() const {
  return extent_.is_infinite() ? final_slope_ : Rational(0);
}

bool PiecewiseLinearConcave::is_zero() const {
  return jump_ == 0 && knots_.empty() && final_slope_ == 0;
}

bool dominated(const PiecewiseLinearConcave& lower, const PiecewiseLinearConcave& upper, const Extent& up_to) {
  std::vector<Rational> points{Rational(0)};
  for (const auto* p : {&lower, &upper}) {
    for (const auto& k : p->knots()) points.push_back(k.t);
    if (p->extent().is_finite()) points.push_back(p->extent().value());
  }
  if (up_to.is_finite()) points.push_back(up_to.value());
  for (const auto& t : points) {
    if (up_to.is_finite() && t > up_to.value()) continue;
    if (lower(t) > upper(t)) return false;
  }
  if (up_to.is_infinite() && lower.eventual_slope() > upper.eventual_slope()) return false;
  return true;
}

}  // namespace rispace
