#pragma once

#include <optional>
#include <vector>

#include "rispace/step_function.hpp"

namespace rispace {

/// A rigid piece of a transport map: x -> x + offset on [left, right).
/// `right == nullopt` marks the unbounded segment on (0, inf).
struct TransportSegment {
  Rational left;
  std::optional<Rational> right;
  Rational offset;

  bool operator==(const TransportSegment&) const = default;
};

/// Measure-preserving piecewise translation of (0, gamma).
///
/// Sources partition (0, gamma) in order; images are pairwise disjoint and
/// cover (0, gamma). Both facts are checked on construction, which makes
/// the map invertible mod null sets.
class TransportMap {
 public:
  TransportMap(std::vector<TransportSegment> segments, Extent extent);

  static TransportMap identity(Extent extent);

  const std::vector<TransportSegment>& segments() const { return segments_; }
  const Extent& extent() const { return extent_; }

  Rational operator()(const Rational& x) const;
  TransportMap inverse() const;

 private:
  std::vector<TransportSegment> segments_;
  Extent extent_;
};

/// sigma with g* o sigma = g wherever g >= g*(inf). On (0, inf) the cells of
/// g below its tail level have no counterpart in g*, so there g* o sigma
/// equals g*(inf) instead; in particular g <= g* o sigma everywhere and the
/// transport is exact for g in S_0.
TransportMap transport_to_rearrangement(const StepFunction& g);

/// f o sigma.
StepFunction apply_transport(const TransportMap& sigma, const StepFunction& f);

}  // namespace rispace
