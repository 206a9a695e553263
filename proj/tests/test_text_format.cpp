#include <doctest.h>

#include "rispace/error.hpp"
#include "rispace/text_format.hpp"
#include "support.hpp"

using namespace rispace;
using testing::fn;
using testing::q;

namespace {

const Extent kInf = Extent::infinite();

void expect_parse_error(std::string_view text, bool gauge, int line, int column) {
  try {
    if (gauge) {
      parse_gauge(text);
    } else {
      parse_step_function(text);
    }
    FAIL("no error for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_SUITE("text_format") {
  TEST_CASE("function format") {
    const auto f = parse_step_function("# remark u\ngamma = 1\n\npiece = 0 1/2 2\n");
    CHECK(f == StepFunction::indicator(0, q(1, 2), 2, Extent(1)));
    CHECK(serialize(f) == "gamma = 1/1\npiece = 0/1 1/2 2/1\ntail = 0/1\n");
    CHECK(parse_step_function("gamma = inf\ntail = 3/6\n") == fn({}, q(1, 2), kInf));
    // the zero gap in front of a positive tail is written out
    CHECK(serialize(fn({{0, 1, 4}, {1, 2, 0}}, 1, kInf)) ==
          "gamma = inf\npiece = 0/1 1/1 4/1\npiece = 1/1 2/1 0/1\ntail = 1/1\n");
    CHECK(serialize(fn({{1, 2, 4}}, 1, kInf)) ==
          "gamma = inf\npiece = 1/1 2/1 4/1\ntail = 1/1\n");
  }

  TEST_CASE("gauge format") {
    const auto g = parse_gauge("kind = pl\ngamma = 1\njump = 0\nknot = 1/2 1\nfinal_slope = 0\n");
    CHECK(g == testing::remark_psi());
    CHECK(serialize(g) == "kind = pl\ngamma = 1/1\njump = 0/1\nknot = 1/2 1/1\nfinal_slope = 0/1\n");
    const auto p = parse_gauge("kind = power\ngamma = inf\np = 2\n");
    CHECK(p == ConcaveGauge::power(2, 1, kInf));
    CHECK(serialize(p) == "kind = power\ngamma = inf\np = 2/1\ncoeff = 1/1\n");
  }

  TEST_CASE("round trips") {
    testing::Gen gen(51);
    for (int i = 0; i < 300; ++i) {
      const Extent e = i % 3 == 0 ? kInf : Extent(q(1 + i % 5, 2));
      const auto f = gen.function(e);
      CHECK(parse_step_function(serialize(f)) == f);
      const auto g = gen.gauge(e);
      CHECK(parse_gauge(serialize(g)) == g);
    }
    const auto p = ConcaveGauge::power(q(5, 3), q(7, 2), Extent(3));
    CHECK(parse_gauge(serialize(p)) == p);
  }

  TEST_CASE("errors carry line and column") {
    expect_parse_error("gamma = 1\npiece = 0 x 2\n", false, 2, 11);
    expect_parse_error("gamma = 1\npiece = 0 1\n", false, 2, 1);
    expect_parse_error("gamma = 1\nbogus = 3\n", false, 2, 1);
    expect_parse_error("gamma 1\n", false, 1, 7);
    expect_parse_error("gamma = -1\n", false, 1, 9);
    expect_parse_error("piece = 0 1 1\n", false, 1, 1);
    expect_parse_error("gamma = 1\npiece = 1/2 1 1\npiece = 0 1/4 1\n", false, 3, 9);
    expect_parse_error("gamma = 1\npiece = 0 2 1\n", false, 2, 1);
    expect_parse_error("kind = spline\n", true, 1, 8);
    expect_parse_error("kind = pl\ngamma = inf\nknot = 1 1\nknot = 2 3\n", true, 4, 1);
    expect_parse_error("kind = power\ngamma = inf\n", true, 2, 1);
    expect_parse_error("kind = power\ngamma = inf\np = 1\n", true, 3, 1);
  }

  TEST_CASE("report fields") {
    const auto fields = report_fields(classify(testing::remark_psi()));
    CHECK(render_text(fields) ==
          "verdict = B\nbeta = 2/1\ndelta = 1/4\nliminf_at_zero = 2/1\nliminf_at_infinity = none\n"
          "bounded_at_infinity = no\ngrothendieck = yes\n");
    const NormValue n{Radical(1), Location::point(q(1, 2))};
    CHECK(render_text(report_fields(n, 128)) == "norm = 1/1\nattained_at = 1/2\nfinite = yes\n");
    const NormValue r{Radical(q(2), 2), Location::limit_at_gamma()};
    const auto rf = report_fields(r, 64);
    CHECK(rf[1] == std::pair<std::string, std::string>{"norm_exact", "2^(1/2)"});
    CHECK(rf[2].second == "64");
    CHECK(rf[0].second.front() == '[');
    const auto inf = report_fields(NormValue::infinite(Location::limit_at_gamma()), 128);
    CHECK(render_text(inf) == "norm = inf\nattained_at = limitGamma\nfinite = no\n");
  }
}
