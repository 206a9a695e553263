#include <doctest.h>

#include "rispace/error.hpp"
#include "rispace/verify.hpp"
#include "support.hpp"

using namespace rispace;
using testing::fn;
using testing::pl;
using testing::q;

namespace {

const Extent kInf = Extent::infinite();

StepFunction u_remark() { return StepFunction::indicator(0, q(1, 2), 2, Extent(1)); }
StepFunction v_remark() { return StepFunction::indicator(q(1, 2), 1, 2, Extent(1)); }

ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("superadditivity") {
    const auto chi = StepFunction::constant(1, Extent(1));
    const auto r = check_superadditivity(chi, chi, q(1, 2), q(1, 2));
    CHECK(r.holds());
    CHECK(r.margin.is_exact());
    CHECK(r.margin.lo == 1);  // 1/2 + 1/2 <= H_{2 chi}(1) = 2
    CHECK(check_superadditivity(u_remark(), StepFunction::zero(Extent(1)), q(1, 4), q(1, 2)).holds());
    CHECK(code_of([&] { check_superadditivity(chi, fn({}, 1, kInf), 1, 1); }) == ErrorCode::DomainMismatch);
  }

  TEST_CASE("disjoint dilation") {
    const auto r = check_disjoint_dilation(u_remark(), v_remark(), u_remark(), Extent(1));
    CHECK(r.holds());
    CHECK(r.margin.lo == 0);
    const auto f = fn({{0, 1, 3}, {1, 2, 1}}, 0, kInf);
    CHECK(check_disjoint_dilation(f, StepFunction::zero(kInf), f, kInf).holds());
    CHECK(code_of([&] { check_disjoint_dilation(u_remark(), u_remark(), u_remark(), Extent(1)); }) ==
          ErrorCode::PremiseViolated);
    CHECK(code_of([&] { check_disjoint_dilation(scale(u_remark(), 2), v_remark(), u_remark(), Extent(1)); }) ==
          ErrorCode::PremiseViolated);
    // the premises only need to hold below alpha
    const auto wide = fn({{0, 4, 1}}, 0, kInf);
    const auto narrow = fn({{0, 1, 2}}, 0, kInf);
    CHECK(code_of([&] { check_disjoint_dilation(wide, StepFunction::zero(kInf), narrow, kInf); }) ==
          ErrorCode::PremiseViolated);
    CHECK(check_disjoint_dilation(wide, StepFunction::zero(kInf), narrow, Extent(1)).holds());
  }

  TEST_CASE("pointwise bound") {
    const auto psi = testing::remark_psi();
    const auto r = check_pointwise_bound(gauge_derivative(psi), psi);
    CHECK(r.holds());
    CHECK(r.margin.lo == 0);
    CHECK(r.note("norm") == "1/1");
    CHECK(check_pointwise_bound(StepFunction::zero(Extent(1)), psi).holds());
    CHECK(code_of([&] { check_pointwise_bound(fn({}, 1, kInf), pl(0, {{1, 1}}, 0, kInf)); }) ==
          ErrorCode::NormInfinite);
    CHECK(check_pointwise_bound(fn({{0, 2, 3}, {2, 5, 1}}, 0, kInf), ConcaveGauge::power(3, 1, kInf)).outcome ==
          Outcome::Holds);
  }

  TEST_CASE("natural sandwich") {
    const auto r = check_natural_sandwich(StepFunction::constant(1, Extent(1)), testing::remark_psi(), q(1, 4));
    CHECK(r.holds());
    CHECK(r.note("natural") == "1/2");
    CHECK(r.note("norm") == "1/1");
    CHECK(r.note("constant") == "3/1");
    CHECK(code_of([&] {
            check_natural_sandwich(StepFunction::constant(1, Extent(1)), ConcaveGauge::power(2, 1, Extent(1)),
                                   q(1, 4));
          }) == ErrorCode::UnsupportedBackend);
  }

  TEST_CASE("integral of big psi against the doubling constant") {
    const auto p2 = ConcaveGauge::power(2, 1, kInf);
    const auto r = check_psi_integral_bound(p2, classify(p2), 1);
    CHECK(r.outcome == Outcome::Holds);
    CHECK(r.margin.lo > q(41, 100));  // (sqrt 2 - 1)^-1 - 2 = 0.414...
    CHECK(r.margin.hi < q(42, 100));
    const auto psi = testing::remark_psi();
    const auto eq = check_psi_integral_bound(psi, classify(psi), q(1, 4));
    CHECK(eq.outcome == Outcome::Holds);
    CHECK(eq.margin.is_exact());
    CHECK(eq.margin.lo == 0);
    CHECK(code_of([&] { check_psi_integral_bound(psi, classify(psi), q(1, 2)); }) == ErrorCode::PremiseViolated);
    const auto bounded = pl(0, {{1, 1}}, 0, kInf);
    CHECK(code_of([&] { check_psi_integral_bound(bounded, classify(bounded), 1); }) ==
          ErrorCode::PremiseViolated);
    // a lying report is caught
    ConditionReport fake = classify(p2);
    fake.beta = Radical(10);
    CHECK(check_psi_integral_bound(p2, fake, 1).outcome == Outcome::Violated);
    // a tiny precision cannot separate a near-equality
    const auto tight = check_psi_integral_bound(psi, classify(psi), q(1, 8), 8);
    CHECK(tight.outcome == Outcome::Holds);
  }

  TEST_CASE("transport bound") {
    const auto psi = testing::remark_psi();
    const auto dec = check_transport_bound(gauge_derivative(psi), psi);
    CHECK(dec.holds());
    CHECK(dec.note("branch") == "S0");
    CHECK(dec.note("exact_transport") == "yes");
    CHECK(dec.note("achieved_constant") == "1/1");
    const auto lin = pl(0, {}, 1, kInf);
    const auto tail = check_transport_bound(fn({{0, 1, q(1, 2)}, {1, 2, 4}}, 1, kInf), lin);
    CHECK(tail.holds());
    CHECK(tail.note("branch") == "general");
    CHECK(tail.note("stated_constant") == "5");
    CHECK(code_of([&] { check_transport_bound(u_remark(), pl(1, {}, 1, Extent(1))); }) ==
          ErrorCode::PremiseViolated);
    const auto p2 = ConcaveGauge::power(2, 1, kInf);
    CHECK(check_transport_bound(fn({{0, 1, 1}, {1, 2, 3}}, 0, kInf), p2).holds());
  }

  TEST_CASE("quasi-uniform convexity") {
    const auto psi = testing::remark_psi();
    const auto r = check_quasi_uniform_convexity(scale(u_remark(), q(1, 2)), scale(v_remark(), q(1, 2)), psi);
    CHECK(r.holds());
    CHECK(r.note("mode") == "natural");
    // the remark pair sits on the natural unit sphere
    const auto u = u_remark(), v = v_remark();
    CHECK(natural_norm(u, psi, q(1, 4)).get() == Radical(1));
    const auto eq = check_quasi_uniform_convexity(u, v, psi);
    CHECK(eq.holds());
    CHECK(eq.note("half_norm") == "1/2");
    CHECK(eq.margin.lo == 0);

    const auto p2 = ConcaveGauge::power(2, 1, kInf);
    const auto a = fn({{0, 1, 1}}, 0, kInf), b = fn({{1, 2, 1}}, 0, kInf);
    const auto pr = check_quasi_uniform_convexity(a, b, p2);
    CHECK(pr.holds());
    CHECK(pr.note("mode") == "plain");
    CHECK(pr.note("half_norm") == "2^(-1/2)");
    CHECK(code_of([&] { check_quasi_uniform_convexity(a, a, p2); }) == ErrorCode::PremiseViolated);
    CHECK(code_of([&] { check_quasi_uniform_convexity(scale(a, 2), b, p2); }) == ErrorCode::PremiseViolated);
    CHECK(code_of([&] { check_quasi_uniform_convexity(a, b, pl(0, {{1, 1}}, 0, kInf)); }) ==
          ErrorCode::PremiseViolated);
  }

  TEST_CASE("holder") {
    const auto psi = testing::remark_psi();
    const auto r = check_holder(u_remark(), StepFunction::constant(1, Extent(1)), psi);
    CHECK(r.holds());
    CHECK(r.note("pairing") == "1/1");
    CHECK(check_holder(u_remark(), StepFunction::zero(Extent(1)), psi).holds());
    CHECK(code_of([&] { check_holder(u_remark(), u_remark(), ConcaveGauge::power(2, 1, Extent(1))); }) ==
          ErrorCode::UnsupportedBackend);
  }

  TEST_CASE("remark bundle") {
    const auto bundle = remark_counterexample();
    REQUIRE(bundle.size() >= 6);
    for (const auto& r : bundle) CHECK_MESSAGE(r.holds(), r.name);
    CHECK(bundle[0].note("value") == "1/1");
    const auto again = remark_counterexample();
    for (std::size_t i = 0; i < bundle.size(); ++i) {
      CHECK(bundle[i].name == again[i].name);
      CHECK(bundle[i].notes == again[i].notes);
    }
    const auto perturbed = remark_counterexample(pl(0, {{q(1, 3), 1}}, 0, Extent(1)));
    bool found = false;
    for (const auto& r : perturbed) {
      if (r.name == "remark.norm_half_sum") {
        found = true;
        CHECK(r.note("asserted") == "no");
        CHECK(r.note("value") == "1/1");
      }
    }
    CHECK(found);
    CHECK(code_of([] { remark_counterexample(pl(0, {}, 1, kInf)); }) == ErrorCode::DomainMismatch);
  }

  TEST_CASE("suite basics") {
    SuiteConfig config;
    config.cases = 40;
    const auto a = run_suite(config);
    CHECK(a.violations() == 0);
    CHECK(a.inconclusive() == 0);
    CHECK(a.records.size() == 40 * suite_check_names().size());
    CHECK(a.serialize() == run_suite(config).serialize());
    config.seed = 1;
    CHECK(a.serialize() != run_suite(config).serialize());
    const std::string text = a.serialize();
    CHECK(text.substr(text.rfind("violations=")) == "violations=0 cases=40 seed=0\n");
    config.checks = {"holder"};
    CHECK(run_suite(config).records.size() == 40);
    config.checks = {"nope"};
    CHECK_THROWS_AS(run_suite(config), Error);
  }

  TEST_CASE("a recorded instance replays to the same result") {
    SuiteConfig config;
    config.cases = 5;
    config.checks = {"superadditivity"};
    const auto report = run_suite(config);
    for (const auto& rec : report.records) {
      CHECK(rec.digest.size() == 16);
      CHECK(digest(rec.result.instance) != "");
    }
    Instance inst;
    inst.functions = {StepFunction::constant(1, Extent(1)), StepFunction::constant(1, Extent(1))};
    inst.params = {q(1, 2), q(1, 2)};
    const auto direct = check_superadditivity(inst.functions[0], inst.functions[1], q(1, 2), q(1, 2));
    const auto via = run_check("superadditivity", inst);
    CHECK(via.outcome == direct.outcome);
    CHECK(via.instance == direct.instance);
  }

  TEST_CASE("digest") {
    CHECK(digest("") == "cbf29ce484222325");
    CHECK(digest("a") == "af63dc4c8601ec8c");
  }

  TEST_CASE("shrinking keeps the failure and reduces size") {
    Instance inst;
    inst.functions = {fn({{0, q(1, 3), q(7, 5)}, {q(1, 3), q(5, 6), 3}, {1, q(7, 4), q(9, 7)}}, q(2, 3), kInf)};
    inst.params = {q(13, 7)};
    // "fails" while some value exceeds 2
    const auto fails = [](const Instance& c) { return c.functions[0].sup() > 2; };
    const Instance small = shrink(inst, fails);
    CHECK(fails(small));
    CHECK(instance_size(small) < instance_size(inst));
    CHECK(small.functions[0].pieces().size() == 1);
    CHECK(small.functions[0].tail_value() == 0);
    CHECK(small.params[0].get_den() == 1);
  }
}
