// Test helpers: small constructors, a seeded generator and brute-force
// oracles that do not go through the library's rearrangement code.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "rispace/gauge.hpp"
#include "rispace/step_function.hpp"

namespace testing {

using rispace::ConcaveGauge;
using rispace::Extent;
using rispace::Knot;
using rispace::Piece;
using rispace::PiecewiseLinearConcave;
using rispace::Rational;
using rispace::StepFunction;

inline Rational q(long n, long d = 1) { return rispace::fraction(n, d); }

inline StepFunction fn(std::vector<Piece> pieces, Rational tail, Extent extent) {
  return StepFunction(std::move(pieces), std::move(tail), std::move(extent));
}

inline ConcaveGauge pl(Rational jump, std::vector<Knot> knots, Rational final_slope, Extent extent) {
  return ConcaveGauge(PiecewiseLinearConcave(std::move(jump), std::move(knots), std::move(final_slope),
                                             std::move(extent)));
}

// min(2t, 1) on (0, 1).
inline ConcaveGauge remark_psi() { return pl(0, {{q(1, 2), 1}}, 0, Extent(1)); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long below(long n) { return static_cast<long>(rng_() % static_cast<std::uint64_t>(n)); }

  Rational value() { return q(below(13), 1 + below(4)); }

  // Step function with up to max_pieces cells on a grid of the domain.
  StepFunction function(const Extent& e, int max_pieces = 6, bool tail = true) {
    const long den = 1 + below(6);
    const long span = e.is_finite() ? den : 5 * den;
    std::vector<long> pts;
    const int k = static_cast<int>(below(max_pieces + 1));
    for (int i = 0; i <= k; ++i) pts.push_back(below(span + 1));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const Rational scale = e.is_finite() ? e.value() : Rational(1);
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      pieces.push_back({q(pts[i], den) * scale, q(pts[i + 1], den) * scale, value()});
    }
    Rational t = tail && below(3) == 0 ? value() : Rational(0);
    if (e.is_finite() && !pts.empty() && pts.back() == span) t = 0;
    return StepFunction(pieces, t, e);
  }

  // Increasing concave piecewise-linear gauge, jump with probability 1/4.
  ConcaveGauge gauge(const Extent& e, bool allow_jump = true) {
    const Rational jump = allow_jump && below(4) == 0 ? q(1 + below(4), 2) : Rational(0);
    Rational slope = q(1 + below(6), 1 + below(2));
    std::vector<Knot> knots;
    Rational t = 0, v = jump;
    const int k = static_cast<int>(below(4));
    for (int i = 0; i < k; ++i) {
      const Rational step = e.is_finite() ? e.value() * q(1 + below(3), 8) : q(1 + below(4), 2);
      if (e.is_finite() && t + step >= e.value()) break;
      t += step;
      v += slope * step;
      knots.push_back({t, v});
      slope *= q(below(4), 4);
      if (slope == 0) break;
    }
    return ConcaveGauge(PiecewiseLinearConcave(jump, knots, slope, e));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Cells of f on (0, gamma), with the tail cut at `horizon` on (0, inf).
inline std::vector<Piece> cells_up_to(const StepFunction& f, const Rational& horizon) {
  std::vector<Piece> out;
  Rational pos = 0;
  for (const auto& c : f.cells()) {
    if (c.left > pos) out.push_back({pos, c.left, 0});
    out.push_back(c);
    pos = c.right;
  }
  const Rational end = f.extent().is_finite() ? f.extent().value() : pos + horizon;
  if (end > pos) out.push_back({pos, end, f.tail_value()});
  return out;
}

// sup of the integral of f over sets of measure <= t, taken over unions of
// whole cells plus at most one partial cell.
inline Rational sup_over_sets(const StepFunction& f, const Rational& t) {
  const auto cells = cells_up_to(f, t);
  const std::size_t n = cells.size();
  Rational best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Rational len = 0, mass = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        len += cells[i].right - cells[i].left;
        mass += (cells[i].right - cells[i].left) * cells[i].value;
      }
    }
    if (len > t) continue;
    best = std::max(best, mass);
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1) continue;
      const Rational part = std::min(Rational(cells[j].right - cells[j].left), Rational(t - len));
      best = std::max(best, Rational(mass + part * cells[j].value));
    }
  }
  return best;
}

// Integral of the largest values of f over total length t, filling cells
// in decreasing order of value.
inline Rational greedy_head(const StepFunction& f, const Rational& t) {
  auto cells = cells_up_to(f, t);
  std::stable_sort(cells.begin(), cells.end(), [](const Piece& a, const Piece& b) { return a.value > b.value; });
  Rational left = t, mass = 0;
  for (const auto& c : cells) {
    const Rational take = std::min(Rational(c.right - c.left), left);
    mass += take * c.value;
    left -= take;
    if (left == 0) break;
  }
  return mass;
}

// m{f > s} by summing cell lengths; -1 encodes infinity.
inline Rational measure_above(const StepFunction& f, const Rational& s) {
  if (f.extent().is_infinite() && f.tail_value() > s) return -1;
  Rational m = 0;
  for (const auto& c : cells_up_to(f, 0)) {
    if (c.value > s) m += c.right - c.left;
  }
  return m;
}

}  // namespace testing
