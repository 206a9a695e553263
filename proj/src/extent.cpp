#include "rispace/extent.hpp"

#include "rispace/error.hpp"

namespace rispace {

Extent::Extent(Rational value) : value_(std::move(value)) {
  if (*value_ < 0) throw Error(ErrorCode::InvalidArgument, "negative extent");
}

const Rational& Extent::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "extent is infinite");
  return *value_;
}

Extent min(const Extent& a, const Extent& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  return Extent(min(a.value(), b.value()));
}

std::string to_string(const Extent& extent) {
  return extent.is_infinite() ? "inf" : to_string(extent.value());
}

Extent parse_extent(std::string_view text) {
  if (text == "inf") return Extent::infinite();
  return Extent(parse_rational(text));
}

}  // namespace rispace
