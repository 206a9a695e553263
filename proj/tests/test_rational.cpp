#include <doctest.h>

#include "rispace/error.hpp"
#include "rispace/extent.hpp"
#include "rispace/rational.hpp"
#include "support.hpp"

using namespace rispace;
using testing::q;

TEST_SUITE("rational") {
  TEST_CASE("parse and print") {
    CHECK(parse_rational("3/4") == q(3, 4));
    CHECK(parse_rational("-6/8") == q(-3, 4));
    CHECK(parse_rational("5") == 5);
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK(to_string(Rational(0)) == "0/1");
    CHECK(to_string(Rational(7)) == "7/1");
    for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.5", "1//2", "2/3x"}) {
      CHECK_THROWS_AS(parse_rational(bad), Error);
    }
  }

  TEST_CASE("fraction reduces") {
    const Rational r = fraction(6, 4);
    CHECK(r.get_num() == 3);
    CHECK(r.get_den() == 2);
    CHECK(fraction(2, 2) == 1);
  }

  TEST_CASE("decimal rendering rounds half to even") {
    CHECK(to_decimal(q(1, 3)) == "0.333333333333");
    CHECK(to_decimal(q(2, 3)) == "0.666666666667");
    CHECK(to_decimal(Rational(2)) == "2");
    CHECK(to_decimal(Rational(0)) == "0");
    CHECK(to_decimal(q(1, 8), 2) == "0.12");
    CHECK(to_decimal(q(3, 8), 2) == "0.38");
    CHECK(to_decimal(q(5, 2), 1) == "2");
    CHECK(to_decimal(q(7, 2), 1) == "4");
    CHECK(to_decimal(q(-1, 3), 3) == "-0.333");
  }

  TEST_CASE("pow") {
    CHECK(pow(q(2, 3), 3) == q(8, 27));
    CHECK(pow(q(5, 7), 0) == 1);
  }

  TEST_CASE("extent") {
    const Extent inf = Extent::infinite();
    CHECK(inf.is_infinite());
    CHECK(Extent(q(3, 2)).value() == q(3, 2));
    CHECK_THROWS_AS(inf.value(), Error);
    CHECK_THROWS_AS(Extent(Rational(-1)), Error);
    CHECK(inf.exceeds(1000));
    CHECK(Extent(1).exceeds(q(1, 2)));
    CHECK_FALSE(Extent(1).exceeds(1));
    CHECK(Extent(1).at_least(1));
    CHECK(min(inf, Extent(2)) == Extent(2));
    CHECK(min(Extent(3), Extent(2)) == Extent(2));
    CHECK(to_string(inf) == "inf");
    CHECK(to_string(Extent(q(3, 2))) == "3/2");
    CHECK(parse_extent("inf") == inf);
    CHECK(parse_extent("4/2") == Extent(2));
  }
}
