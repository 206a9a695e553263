#include <doctest.h>

#include "rispace/error.hpp"
#include "rispace/transport.hpp"
#include "support.hpp"

using namespace rispace;
using testing::fn;
using testing::q;

namespace {

const Extent kInf = Extent::infinite();

// Every source segment carries a single value of g and lands on a region
// where g* takes one value.
void check_cellwise(const StepFunction& g, const TransportMap& sigma) {
  const auto star = rearrange(g);
  const auto pulled = apply_transport(sigma, star);
  for (const auto& c : testing::cells_up_to(g, 3)) {
    const Rational mid = (c.left + c.right) / 2;
    CHECK(g(mid) <= star(sigma(mid)));
    CHECK(g(mid) <= 2 * star(sigma(mid)));
    if (g(mid) >= star.tail_value() || g.extent().is_finite()) CHECK(g(mid) == star(sigma(mid)));
    CHECK(pulled(mid) == star(sigma(mid)));
  }
}

}  // namespace

TEST_SUITE("transport") {
  TEST_CASE("decreasing input gives the identity") {
    const auto g = fn({{0, 1, 3}, {1, 2, 1}}, 0, Extent(2));
    const auto sigma = transport_to_rearrangement(g);
    for (const Rational& x : {q(0), q(1, 2), q(1), q(3, 2)}) CHECK(sigma(x) == x);
    CHECK(apply_transport(sigma, g) == g);
  }

  TEST_CASE("swap of two unit intervals") {
    const auto g = fn({{0, 1, 1}, {1, 2, 3}}, 0, Extent(2));
    const auto sigma = transport_to_rearrangement(g);
    CHECK(sigma(q(1, 2)) == q(3, 2));
    CHECK(sigma(q(3, 2)) == q(1, 2));
    CHECK(apply_transport(sigma, rearrange(g)) == g);
    CHECK(apply_transport(sigma.inverse(), g) == rearrange(g));
  }

  TEST_CASE("identity map") {
    const auto f = fn({{0, 1, 1}, {2, 3, 4}}, 2, kInf);
    CHECK(apply_transport(TransportMap::identity(kInf), f) == f);
  }

  TEST_CASE("invalid maps are rejected") {
    // images overlap
    CHECK_THROWS_AS(TransportMap({{0, Rational(1), 1}, {1, Rational(2), 0}}, Extent(2)), Error);
    // sources leave a hole
    CHECK_THROWS_AS(TransportMap({{0, Rational(1), 0}, {q(3, 2), Rational(2), 0}}, Extent(2)), Error);
    // unbounded segment on a finite domain
    CHECK_THROWS_AS(TransportMap({{0, std::nullopt, 0}}, Extent(2)), Error);
    CHECK_NOTHROW(TransportMap({{0, Rational(1), 1}, {1, Rational(2), -1}}, Extent(2)));
  }

  TEST_CASE("nonzero tail on the half line") {
    const auto g = fn({{0, 1, q(1, 2)}, {1, 2, 4}, {2, 3, 2}}, 1, kInf);
    const auto sigma = transport_to_rearrangement(g);
    check_cellwise(g, sigma);
    CHECK(rearrange(apply_transport(sigma, g)) == rearrange(g));
  }

  TEST_CASE("property: random transports") {
    testing::Gen gen(21);
    for (int i = 0; i < 400; ++i) {
      const Extent e = i % 2 ? Extent(1) : kInf;
      const auto g = gen.function(e, 6);
      const auto sigma = transport_to_rearrangement(g);
      check_cellwise(g, sigma);
      if (g.in_s0()) CHECK(apply_transport(sigma, rearrange(g)) == g);
      // sigma preserves rearrangements of anything
      const auto f = gen.function(e, 6);
      CHECK(rearrange(apply_transport(sigma, f)) == rearrange(f));
      CHECK(rearrange(apply_transport(sigma.inverse(), f)) == rearrange(f));
      // sigma and its inverse compose to the identity away from breakpoints
      for (const auto& seg : sigma.segments()) {
        const Rational x = seg.right ? Rational((seg.left + *seg.right) / 2) : Rational(seg.left + 1);
        CHECK(sigma.inverse()(sigma(x)) == x);
      }
    }
  }
}
