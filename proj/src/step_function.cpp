#include "rispace/step_function.hpp"

#include <algorithm>
#include <functional>

#include "rispace/error.hpp"

namespace rispace {

StepFunction::StepFunction(std::vector<Piece> pieces, Rational tail_value, Extent extent)
    : tail_value_(std::move(tail_value)), extent_(std::move(extent)) {
  if (extent_.is_finite() && extent_.value() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "domain (0, gamma) must have positive length");
  }
  if (tail_value_ < 0) throw Error(ErrorCode::InvalidArgument, "negative tail value");
  Rational cursor = 0;
  for (auto& p : pieces) {
    if (p.value < 0) throw Error(ErrorCode::InvalidArgument, "negative piece value");
    if (p.left < cursor) throw Error(ErrorCode::InvalidArgument, "pieces must be sorted and disjoint");
    if (p.right < p.left) throw Error(ErrorCode::InvalidArgument, "piece with right < left");
    if (!extent_.at_least(p.right)) throw Error(ErrorCode::InvalidArgument, "piece outside the domain");
    if (p.left > cursor) cells_.push_back({cursor, p.left, 0});
    cursor = p.right;
    cells_.push_back(std::move(p));
  }
  canonicalize();
}

void StepFunction::canonicalize() {
  std::vector<Piece> merged;
  for (auto& c : cells_) {
    if (c.right == c.left) continue;
    if (!merged.empty() && merged.back().value == c.value) {
      merged.back().right = c.right;
    } else {
      merged.push_back(std::move(c));
    }
  }
  if (extent_.is_finite() && !merged.empty() && merged.back().right == extent_.value()) {
    tail_value_ = merged.back().value;
    merged.pop_back();
  }
  while (!merged.empty() && merged.back().value == tail_value_) merged.pop_back();
  cells_ = std::move(merged);
}

StepFunction StepFunction::zero(Extent extent) { return StepFunction({}, 0, std::move(extent)); }

StepFunction StepFunction::constant(const Rational& value, Extent extent) {
  return StepFunction({}, value, std::move(extent));
}

StepFunction StepFunction::indicator(const Rational& left, const Rational& right, const Rational& value,
                                     Extent extent) {
  return StepFunction({{left, right, value}}, 0, std::move(extent));
}

std::vector<Piece> StepFunction::pieces() const {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const bool last = i + 1 == cells_.size();
    if (cells_[i].value != 0 || (last && tail_value_ != 0)) out.push_back(cells_[i]);
  }
  return out;
}

Rational StepFunction::operator()(const Rational& x) const {
  if (x < 0 || !extent_.exceeds(x)) throw Error(ErrorCode::OutOfDomain, "point outside (0, gamma)");
  auto it = std::upper_bound(cells_.begin(), cells_.end(), x,
                             [](const Rational& v, const Piece& c) { return v < c.right; });
  return it == cells_.end() ? tail_value_ : it->value;
}

Rational StepFunction::sup() const {
  Rational out = tail_value_;
  for (const auto& c : cells_) out = max(out, c.value);
  return out;
}

std::optional<Rational> StepFunction::integral() const {
  Rational total = 0;
  for (const auto& c : cells_) total += c.value * (c.right - c.left);
  if (tail_value_ != 0) {
    if (extent_.is_infinite()) return std::nullopt;
    total += tail_value_ * (extent_.value() - tail_start());
  }
  return total;
}

std::vector<Rational> StepFunction::breakpoints() const {
  std::vector<Rational> out;
  for (const auto& c : cells_) out.push_back(c.right);
  return out;
}

std::vector<Piece> StepFunction::slice(const Rational& lo, const Rational& hi) const {
  if (extent_.is_finite() && hi > extent_.value()) {
    throw Error(ErrorCode::OutOfDomain, "slice beyond gamma");
  }
  std::vector<Piece> out;
  for (const auto& c : cells_) {
    const Rational l = max(c.left, lo);
    const Rational r = min(c.right, hi);
    if (l < r) out.push_back({l, r, c.value});
  }
  const Rational l = max(tail_start(), lo);
  if (l < hi) out.push_back({l, hi, tail_value_});
  return out;
}

namespace {

void require_same_domain(const StepFunction& f, const StepFunction& g) {
  if (!(f.extent() == g.extent())) {
    throw Error(ErrorCode::DomainMismatch, "functions live on different domains");
  }
}

// Applies op cellwise on the common refinement.
StepFunction combine(const StepFunction& f, const StepFunction& g,
                     const std::function<Rational(const Rational&, const Rational&)>& op) {
  require_same_domain(f, g);
  std::vector<Rational> cuts = f.breakpoints();
  const auto gb = g.breakpoints();
  cuts.insert(cuts.end(), gb.begin(), gb.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Piece> cells;
  Rational left = 0;
  for (const auto& c : cuts) {
    if (c > left) cells.push_back({left, c, op(f(left), g(left))});
    left = c;
  }
  return StepFunction(std::move(cells), op(f.tail_value(), g.tail_value()), f.extent());
}

}  // namespace

Extent distribution(const StepFunction& f, const Rational& s) {
  if (f.tail_value() > s && f.extent().is_infinite()) return Extent::infinite();
  Rational measure = 0;
  for (const auto& c : f.cells()) {
    if (c.value > s) measure += c.right - c.left;
  }
  if (f.tail_value() > s) measure += f.extent().value() - f.tail_start();
  return Extent(measure);
}

StepFunction rearrange(const StepFunction& f) {
  struct Slab {
    Rational length;
    Rational value;
  };
  std::vector<Slab> slabs;
  const Rational& tail = f.tail_value();
  const bool unbounded = f.extent().is_infinite();
  for (const auto& c : f.cells()) {
    // On (0, inf) everything at or below the tail level sinks into f*(inf).
    if (!unbounded || c.value > tail) slabs.push_back({c.right - c.left, c.value});
  }
  if (!unbounded) slabs.push_back({f.extent().value() - f.tail_start(), tail});
  std::stable_sort(slabs.begin(), slabs.end(), [](const Slab& a, const Slab& b) { return a.value > b.value; });

  std::vector<Piece> cells;
  Rational left = 0;
  for (const auto& s : slabs) {
    cells.push_back({left, left + s.length, s.value});
    left += s.length;
  }
  return StepFunction(std::move(cells), unbounded ? tail : Rational(0), f.extent());
}

PiecewiseLinearConcave head_integral_profile(const StepFunction& f) {
  const StepFunction star = rearrange(f);
  std::vector<Knot> knots;
  Rational acc = 0;
  for (const auto& c : star.cells()) {
    acc += c.value * (c.right - c.left);
    knots.push_back({c.right, acc});
  }
  return PiecewiseLinearConcave(0, std::move(knots), star.tail_value(), f.extent());
}

Rational head_integral(const StepFunction& f, const Rational& t) {
  if (t < 0) throw Error(ErrorCode::OutOfDomain, "negative length");
  if (f.extent().is_finite() && t > f.extent().value()) throw Error(ErrorCode::OutOfDomain, "length exceeds gamma");
  return head_integral_profile(f)(t);
}

bool submajorizes(const StepFunction& g, const StepFunction& f, const Extent& up_to) {
  return dominated(head_integral_profile(f), head_integral_profile(g), up_to);
}

StepFunction dilate(const StepFunction& f, const Rational& factor) {
  if (factor <= 0) throw Error(ErrorCode::InvalidArgument, "dilation factor must be positive");
  std::vector<Piece> cells;
  for (const auto& c : f.cells()) cells.push_back({c.left * factor, c.right * factor, c.value});
  if (f.extent().is_infinite()) return StepFunction(std::move(cells), f.tail_value(), f.extent());

  const Rational& gamma = f.extent().value();
  const Rational tail_begin = f.tail_start() * factor;
  const Rational tail_end = gamma * factor;
  // The stretched function vanishes past gamma * factor.
  const auto support_end = [&]() -> Rational {
    if (f.tail_value() != 0) return tail_end;
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
      if (it->value != 0) return it->right;
    }
    return 0;
  }();
  if (support_end > gamma) throw Error(ErrorCode::DomainOverflow, "dilated support exceeds gamma");

  std::vector<Piece> kept;
  for (auto& c : cells) {
    if (c.left >= gamma) break;
    c.right = min(c.right, gamma);
    kept.push_back(std::move(c));
  }
  if (tail_begin < gamma) kept.push_back({tail_begin, min(tail_end, gamma), f.tail_value()});
  return StepFunction(std::move(kept), 0, f.extent());
}

StepFunction truncate(const StepFunction& f, const Rational& t) {
  if (t <= 0) return StepFunction::zero(f.extent());
  if (!f.extent().exceeds(t)) return f;
  return StepFunction(f.slice(0, t), 0, f.extent());
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return Rational(a + b); });
}

StepFunction max(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return max(a, b); });
}

StepFunction min(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return min(a, b); });
}

StepFunction positive_difference(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return max(Rational(a - b), Rational(0)); });
}

StepFunction scale(const StepFunction& f, const Rational& c) {
  if (c < 0) throw Error(ErrorCode::InvalidArgument, "negative scale factor");
  std::vector<Piece> cells = f.cells();
  for (auto& p : cells) p.value *= c;
  return StepFunction(std::move(cells), f.tail_value() * c, f.extent());
}

bool disjoint(const StepFunction& f, const StepFunction& g) { return min(f, g).is_zero(); }

std::optional<Rational> pairing(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return Rational(a * b); }).integral();
}

bool pointwise_le(const StepFunction& f, const StepFunction& g) {
  return positive_difference(f, g).is_zero();
}

}  // namespace rispace
