#include "rispace/rational.hpp"

#include <cctype>

#include "rispace/error.hpp"

namespace rispace {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text)) {
    throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  Rational out;
  out.get_num() = parse_integer(num_text);
  out.get_den() = 1;
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_literal(den_text) || den_text[0] == '-' || den_text[0] == '+') {
      throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    }
    out.get_den() = parse_integer(den_text);
    if (out.get_den() == 0) {
      throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    }
  }
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

std::string to_decimal(const Rational& value, int significant_digits) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  const Rational magnitude = abs(value);

  // Find e with 10^e <= magnitude < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(magnitude.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(magnitude.get_den_mpz_t(), 10));
  auto ten_pow = [](long k) {
    Rational r;
    mpz_ui_pow_ui(r.get_num_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    r.get_den() = 1;
    return k < 0 ? Rational(1) / r : r;
  };
  while (ten_pow(e) > magnitude) --e;
  while (ten_pow(e + 1) <= magnitude) ++e;

  const Rational scaled = magnitude * ten_pow(significant_digits - 1 - e);
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const mpz_class twice = 2 * r;
  const int cmp = ::cmp(twice, scaled.get_den());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) > significant_digits) {
    // Rounding carried into a new leading digit.
    ++e;
    digits.pop_back();
  }

  std::string out;
  const long point = e + 1;  // digits before the decimal point
  if (e < -6 || e >= 15) {
    out = digits.substr(0, 1);
    std::string frac = digits.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(e);
  } else if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
    while (out.back() == '0') out.pop_back();
  } else if (point >= static_cast<long>(digits.size())) {
    out = digits + std::string(static_cast<std::size_t>(point) - digits.size(), '0');
  } else {
    std::string frac = digits.substr(static_cast<std::size_t>(point));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = digits.substr(0, static_cast<std::size_t>(point));
    if (!frac.empty()) out += "." + frac;
  }
  return negative ? "-" + out : out;
}

}  // namespace rispace
