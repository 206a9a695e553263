#include "rispace/radical.hpp"

#include <mpfr.h>

#include <numeric>

#include "rispace/error.hpp"

namespace rispace {

namespace {

// RAII holder for an mpfr_t.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  ~MpfrValue() { mpfr_clear(value_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;

  mpfr_ptr get() { return value_; }

  Rational to_rational() {
    Rational out;
    mpfr_get_q(out.get_mpq_t(), value_);
    return out;
  }

 private:
  mpfr_t value_;
};

// Smallest k with 2^k >= |x| for x != 0, as a rough magnitude bound.
long magnitude_bits(const Rational& x) {
  if (x == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) + 1;
}

Rational two_pow_neg(unsigned precision) {
  Rational out(1);
  mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), precision);
  return out;
}

// Evaluates op(x) with round-down and round-up, refining the working
// precision until the enclosure is narrow enough.
template <class Op>
Enclosure directed_enclosure(const Rational& x, long result_bits, unsigned precision, Op op) {
  const Rational target = two_pow_neg(precision);
  mpfr_prec_t working = static_cast<mpfr_prec_t>(precision) + std::max(0L, result_bits) + 8;
  for (;;) {
    MpfrValue arg(working), lo(working), hi(working);
    mpfr_set_q(arg.get(), x.get_mpq_t(), MPFR_RNDD);
    op(lo.get(), arg.get(), MPFR_RNDD);
    mpfr_set_q(arg.get(), x.get_mpq_t(), MPFR_RNDU);
    op(hi.get(), arg.get(), MPFR_RNDU);
    Enclosure out{lo.to_rational(), hi.to_rational()};
    if (out.width() <= target) return out;
    working += 64;
  }
}

bool perfect_power(const mpz_class& n, unsigned k, mpz_class& root) {
  return mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0;
}

std::optional<long> exact_log2(const mpz_class& n) {
  if (n <= 0 || mpz_popcount(n.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
}

}  // namespace

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (a.lo < 0 || b.lo < 0) {
    throw Error(ErrorCode::InvalidArgument, "enclosure product requires nonnegative operands");
  }
  return {a.lo * b.lo, a.hi * b.hi};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (a.lo < 0 || b.lo <= 0) {
    throw Error(ErrorCode::InvalidArgument, "enclosure quotient requires a positive divisor");
  }
  return {a.lo / b.hi, a.hi / b.lo};
}

std::string to_string(const Enclosure& e) {
  if (e.is_exact()) return to_string(e.lo);
  return "[" + to_string(e.lo) + ", " + to_string(e.hi) + "]";
}

Enclosure log_enclosure(const Rational& x, unsigned precision) {
  if (x <= 0) throw Error(ErrorCode::InvalidArgument, "logarithm of a nonpositive number");
  if (x == 1) return Enclosure::exact(0);
  const long bits = magnitude_bits(Rational(std::max(magnitude_bits(x), -magnitude_bits(x))));
  return directed_enclosure(x, bits, precision,
                            [](mpfr_ptr out, mpfr_ptr in, mpfr_rnd_t rnd) { mpfr_log(out, in, rnd); });
}

Radical::Radical(const Rational& radicand, unsigned degree) : radicand_(radicand), degree_(degree) {
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "radical of degree 0");
  normalize();
}

void Radical::normalize() {
  if (radicand_ < 0) throw Error(ErrorCode::InvalidArgument, "negative radicand");
  if (radicand_ == 0 || radicand_ == 1) {
    degree_ = 1;
    return;
  }
  bool reduced = true;
  while (reduced && degree_ > 1) {
    reduced = false;
    for (unsigned k = 2; k <= degree_; ++k) {
      if (degree_ % k != 0) continue;
      mpz_class num_root, den_root;
      if (perfect_power(radicand_.get_num(), k, num_root) &&
          perfect_power(radicand_.get_den(), k, den_root)) {
        radicand_ = Rational(num_root, den_root);
        radicand_.canonicalize();
        degree_ /= k;
        reduced = true;
        break;
      }
    }
  }
}

Radical Radical::power_of_two(const Rational& exponent) {
  const mpz_class& p = exponent.get_num();
  if (!p.fits_slong_p() || !exponent.get_den().fits_ulong_p()) {
    throw Error(ErrorCode::InvalidArgument, "exponent too large");
  }
  const long num = p.get_si();
  Rational radicand;
  mpz_ui_pow_ui(radicand.get_num_mpz_t(), 2, static_cast<unsigned long>(num < 0 ? -num : num));
  radicand.get_den() = 1;
  if (num < 0) radicand = 1 / radicand;
  return Radical(radicand, static_cast<unsigned>(exponent.get_den().get_ui()));
}

const Rational& Radical::rational() const {
  if (degree_ != 1) throw Error(ErrorCode::InvalidArgument, "value " + to_string() + " is irrational");
  return radicand_;
}

std::optional<Rational> Radical::power_of_two_exponent() const {
  if (radicand_ == 0) return std::nullopt;
  if (radicand_.get_den() == 1) {
    if (auto k = exact_log2(radicand_.get_num())) return fraction(*k, degree_);
  } else if (radicand_.get_num() == 1) {
    if (auto k = exact_log2(radicand_.get_den())) return fraction(-*k, degree_);
  }
  return std::nullopt;
}

Radical Radical::pow(unsigned long n) const { return Radical(rispace::pow(radicand_, n), degree_); }

Radical operator*(const Radical& a, const Radical& b) {
  const unsigned l = std::lcm(a.degree_, b.degree_);
  return Radical(pow(a.radicand_, l / a.degree_) * pow(b.radicand_, l / b.degree_), l);
}

Radical operator/(const Radical& a, const Radical& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  const unsigned l = std::lcm(a.degree_, b.degree_);
  return Radical(pow(a.radicand_, l / a.degree_) / pow(b.radicand_, l / b.degree_), l);
}

std::strong_ordering operator<=>(const Radical& a, const Radical& b) {
  const unsigned l = std::lcm(a.degree_, b.degree_);
  const Rational lhs = pow(a.radicand_, l / a.degree_);
  const Rational rhs = pow(b.radicand_, l / b.degree_);
  const int c = cmp(lhs, rhs);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Enclosure Radical::enclose(unsigned precision) const {
  if (is_rational()) return Enclosure::exact(radicand_);
  const long bits = magnitude_bits(radicand_) / static_cast<long>(degree_) + 1;
  const unsigned long n = degree_;
  return directed_enclosure(radicand_, bits, precision, [n](mpfr_ptr out, mpfr_ptr in, mpfr_rnd_t rnd) {
    mpfr_rootn_ui(out, in, n, rnd);
  });
}

std::string Radical::to_string() const {
  if (is_rational()) return rispace::to_string(radicand_);
  if (auto e = power_of_two_exponent()) return "2^(" + rispace::to_string(*e) + ")";
  return "(" + rispace::to_string(radicand_) + ")^(1/" + std::to_string(degree_) + ")";
}

}  // namespace rispace
