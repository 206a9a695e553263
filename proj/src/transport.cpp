#include "rispace/transport.hpp"

#include <algorithm>
#include <map>

#include "rispace/error.hpp"

namespace rispace {

TransportMap::TransportMap(std::vector<TransportSegment> segments, Extent extent)
    : segments_(std::move(segments)), extent_(std::move(extent)) {
  std::erase_if(segments_, [](const TransportSegment& s) { return s.right && *s.right == s.left; });
  Rational cursor = 0;
  bool closed = false;
  for (const auto& s : segments_) {
    if (closed || s.left != cursor) throw Error(ErrorCode::InvalidArgument, "transport sources must be contiguous");
    if (s.right) {
      if (*s.right < s.left) throw Error(ErrorCode::InvalidArgument, "transport segment with right < left");
      cursor = *s.right;
    } else {
      if (extent_.is_finite()) throw Error(ErrorCode::InvalidArgument, "unbounded segment on a finite domain");
      closed = true;
    }
  }
  if (extent_.is_finite() ? cursor != extent_.value() : !closed) {
    throw Error(ErrorCode::InvalidArgument, "transport sources must cover (0, gamma)");
  }

  // Images must tile (0, gamma) as well.
  std::vector<TransportSegment> images;
  for (const auto& s : segments_) {
    images.push_back({s.left + s.offset, s.right ? std::optional<Rational>(*s.right + s.offset) : std::nullopt, 0});
  }
  std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) { return a.left < b.left; });
  cursor = 0;
  for (const auto& im : images) {
    if (im.left != cursor) throw Error(ErrorCode::InvalidArgument, "transport images must tile (0, gamma)");
    if (im.right) cursor = *im.right;
  }
  if (extent_.is_finite() && cursor != extent_.value()) {
    throw Error(ErrorCode::InvalidArgument, "transport images must tile (0, gamma)");
  }
}

TransportMap TransportMap::identity(Extent extent) {
  const std::optional<Rational> right =
      extent.is_finite() ? std::optional<Rational>(extent.value()) : std::nullopt;
  return TransportMap({{0, right, 0}}, extent);
}

Rational TransportMap::operator()(const Rational& x) const {
  for (const auto& s : segments_) {
    if (x >= s.left && (!s.right || x < *s.right)) return x + s.offset;
  }
  throw Error(ErrorCode::OutOfDomain, "point outside (0, gamma)");
}

TransportMap TransportMap::inverse() const {
  std::vector<TransportSegment> inv;
  for (const auto& s : segments_) {
    inv.push_back({s.left + s.offset, s.right ? std::optional<Rational>(*s.right + s.offset) : std::nullopt,
                   -s.offset});
  }
  std::sort(inv.begin(), inv.end(), [](const auto& a, const auto& b) { return a.left < b.left; });
  return TransportMap(std::move(inv), extent_);
}

TransportMap transport_to_rearrangement(const StepFunction& g) {
  const StepFunction star = rearrange(g);
  const bool unbounded = g.extent().is_infinite();
  const Rational& floor_level = g.tail_value();

  // Next free position inside the slab of g* carrying each value.
  std::map<Rational, Rational> next_free;
  for (const auto& c : star.cells()) next_free.emplace(c.value, c.left);
  next_free.emplace(star.tail_value(), star.tail_start());

  std::vector<TransportSegment> segments;
  for (const auto& c : g.cells()) {
    const Rational level = (unbounded && c.value < floor_level) ? floor_level : c.value;
    Rational& target = next_free.at(level);
    segments.push_back({c.left, c.right, target - c.left});
    target += c.right - c.left;
  }
  Rational& target = next_free.at(g.tail_value());
  if (unbounded) {
    segments.push_back({g.tail_start(), std::nullopt, target - g.tail_start()});
  } else {
    segments.push_back({g.tail_start(), g.extent().value(), target - g.tail_start()});
  }
  return TransportMap(std::move(segments), g.extent());
}

StepFunction apply_transport(const TransportMap& sigma, const StepFunction& f) {
  if (!(sigma.extent() == f.extent())) throw Error(ErrorCode::DomainMismatch, "transport and function domains differ");
  std::vector<Piece> cells;
  Rational tail = 0;
  for (const auto& s : sigma.segments()) {
    if (s.right) {
      for (auto p : f.slice(s.left + s.offset, *s.right + s.offset)) {
        cells.push_back({p.left - s.offset, p.right - s.offset, p.value});
      }
    } else {
      // Unbounded segment: the image eventually lies in f's tail.
      const Rational lo = s.left + s.offset;
      const Rational hi = max(lo, f.tail_start());
      for (auto p : f.slice(lo, hi)) cells.push_back({p.left - s.offset, p.right - s.offset, p.value});
      tail = f.tail_value();
    }
  }
  return StepFunction(std::move(cells), tail, f.extent());
}

}  // namespace rispace
