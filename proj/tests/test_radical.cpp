#include <doctest.h>

#include "rispace/error.hpp"
#include "rispace/radical.hpp"
#include "support.hpp"

using namespace rispace;
using testing::q;

TEST_SUITE("radical") {
  TEST_CASE("normal form") {
    CHECK(Radical(q(4), 2) == Radical(2));
    CHECK(Radical(q(8, 27), 3) == Radical(q(2, 3)));
    CHECK(Radical(q(16), 4).is_rational());
    CHECK(Radical(q(4), 4) == Radical(q(2), 2));
    CHECK_FALSE(Radical(q(2), 2).is_rational());
    CHECK_THROWS_AS(Radical(q(2), 2).rational(), Error);
    CHECK_THROWS_AS(Radical(q(-2), 2), Error);
  }

  TEST_CASE("arithmetic") {
    const Radical r2(q(2), 2);
    CHECK(r2 * r2 == Radical(2));
    CHECK(r2 / r2 == Radical(1));
    CHECK(Radical(q(2), 2) * Radical(q(2), 3) == Radical::power_of_two(q(5, 6)));
    CHECK(Radical(q(9, 4), 2).rational() == q(3, 2));
    CHECK(r2.pow(4) == Radical(4));
  }

  TEST_CASE("exact ordering") {
    CHECK(Radical(q(2), 2) < Radical(q(3, 2)));
    CHECK(Radical(q(2), 2) > Radical(q(7, 5)));
    CHECK(Radical(q(3), 3) > Radical(q(2), 2));
    CHECK(Radical(q(9), 6) == Radical(q(3), 3));
    CHECK(Radical(q(2), 2) >= Radical(q(2), 2));
  }

  TEST_CASE("powers of two") {
    CHECK(Radical::power_of_two(q(1, 2)) == Radical(q(2), 2));
    CHECK(Radical::power_of_two(q(-1, 2)) == Radical(q(1, 2), 2));
    CHECK(Radical::power_of_two(3) == Radical(8));
    CHECK(*Radical(q(2), 3).power_of_two_exponent() == q(1, 3));
    CHECK(*Radical(q(1, 4), 3).power_of_two_exponent() == q(-2, 3));
    CHECK_FALSE(Radical(q(3), 2).power_of_two_exponent());
    CHECK(Radical::power_of_two(q(1, 2)).to_string() == "2^(1/2)");
    CHECK(Radical(q(3), 2).to_string() == "(3/1)^(1/2)");
    CHECK(Radical(q(3, 4)).to_string() == "3/4");
  }

  TEST_CASE("enclosures are certified and tight") {
    for (unsigned prec : {16u, 64u, 128u, 256u}) {
      const Enclosure e = Radical(q(2), 2).enclose(prec);
      CHECK(e.lo * e.lo <= 2);
      CHECK(e.hi * e.hi >= 2);
      CHECK(e.width() <= Rational(1) / pow(Rational(2), prec));
    }
    CHECK(Radical(q(5, 3)).enclose().is_exact());
    const Enclosure c = Radical(q(10), 3).enclose();
    CHECK(c.lo * c.lo * c.lo <= 10);
    CHECK(c.hi * c.hi * c.hi >= 10);
  }

  TEST_CASE("log enclosure") {
    const Enclosure l2 = log_enclosure(2);
    CHECK(l2.lo > q(6931471805599453, 10000000000000000LL));
    CHECK(l2.hi < q(6931471805599454, 10000000000000000LL));
    CHECK(log_enclosure(1).is_exact());
    CHECK(log_enclosure(q(1, 2)).hi < 0);
    CHECK_THROWS_AS(log_enclosure(0), Error);
  }

  TEST_CASE("interval arithmetic") {
    const Enclosure a{1, 2}, b{3, 5};
    CHECK((a + b).lo == 4);
    CHECK((a + b).hi == 7);
    CHECK((b - a).lo == 1);
    CHECK((b - a).hi == 4);
    CHECK((a * b).hi == 10);
    CHECK((a / b).lo == q(1, 5));
    CHECK(to_string(Enclosure::exact(q(1, 2))) == "1/2");
    CHECK(to_string(a) == "[1/1, 2/1]");
  }
}
