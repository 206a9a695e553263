#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rispace/gauge.hpp"
#include "rispace/norms.hpp"
#include "rispace/radical.hpp"
#include "rispace/step_function.hpp"
#include "rispace/transport.hpp"

namespace rispace {

enum class Outcome { Holds, Violated, Inconclusive };
const char* to_string(Outcome o);

/// Result of one inequality check.
///
/// `margin` is RHS - LHS at the witness (nonnegative iff the inequality
/// holds there); it is exact unless a power-law gauge or a logarithm is
/// involved. The witness is the location where LHS/RHS is largest.
struct CheckResult {
  std::string name;
  std::string instance;
  Outcome outcome = Outcome::Holds;
  Enclosure margin = Enclosure::exact(0);
  Location witness;
  std::vector<std::pair<std::string, std::string>> notes;

  bool holds() const { return outcome == Outcome::Holds; }
  std::string note(const std::string& key) const;
};

/// H_{f1}(t1) + H_{f2}(t2) <= H_{f1+f2}(t1+t2).
CheckResult check_superadditivity(const StepFunction& f1, const StepFunction& f2, const Rational& t1,
                                  const Rational& t2);

/// For disjoint u, v both submajorized by the decreasing f on [0, alpha):
/// (u + v) is submajorized by D2 f on [0, alpha).
CheckResult check_disjoint_dilation(const StepFunction& u, const StepFunction& v, const StepFunction& f,
                                    const Extent& alpha);

/// f*(t) <= ||f|| Psi(t) for all t.
CheckResult check_pointwise_bound(const StepFunction& f, const ConcaveGauge& psi);

/// ||f||^nat <= ||f|| <= C ||f||^nat, piecewise-linear gauges.
CheckResult check_natural_sandwich(const StepFunction& f, const ConcaveGauge& psi, const Rational& delta);

/// integral_0^t Psi <= (beta - 1)^-1 psi(t). Inconclusive when the
/// enclosures at `precision` overlap without being exact.
CheckResult check_psi_integral_bound(const ConcaveGauge& psi, const ConditionReport& report, const Rational& t,
                                     unsigned precision = kDefaultPrecision);

/// f <= 4 ||f|| T_sigma Psi (f in S_0) or f <= 5 ||f|| T_sigma Psi
/// (general, via the split f = (f - f*(inf))^+ + min(f, f*(inf))), with
/// sigma the exact transport of f onto f*.
CheckResult check_transport_bound(const StepFunction& f, const ConcaveGauge& psi);

/// Disjoint u, v in the unit ball (plain norm under (A), the natural norm
/// with the report's delta under (B)): ||(u+v)/2|| <= 1/beta, together with
/// ||D2 psi'|| <= 2/beta.
CheckResult check_quasi_uniform_convexity(const StepFunction& u, const StepFunction& v, const ConcaveGauge& psi);

/// integral f g <= ||f||_M ||g||_Lorentz, piecewise-linear gauges.
CheckResult check_holder(const StepFunction& f, const StepFunction& g, const ConcaveGauge& psi);

/// psi(t) = min(2t, 1) on (0, 1).
ConcaveGauge remark_gauge();

/// The counterexample pair u = 2 chi[0,1/2), v = 2 chi[1/2,1). With the
/// default gauge the known exact values are asserted; for any other gauge
/// on (0, 1) the same quantities are reported without assertion.
std::vector<CheckResult> remark_counterexample(const ConcaveGauge& psi = remark_gauge());

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::size_t max_pieces = 6;
  std::vector<ConcaveGauge> gauge_pool;  // empty: default_gauge_pool()
  std::vector<Extent> extent_pool;       // empty: {1, 3/2, inf}
  unsigned precision = kDefaultPrecision;
  std::vector<std::string> checks;  // empty: all of suite_check_names()
};

std::vector<ConcaveGauge> default_gauge_pool();
std::vector<std::string> suite_check_names();

/// Inputs of one generated check, in a form the shrinker can edit.
struct Instance {
  std::vector<StepFunction> functions;
  std::optional<ConcaveGauge> gauge;
  std::vector<Rational> params;
  std::optional<Extent> alpha;
};

std::string serialize(const Instance& inst);
/// FNV-1a 64 of the serialized instance, as 16 hex digits.
std::string digest(const std::string& text);

/// Runs a named suite check on an instance.
CheckResult run_check(const std::string& name, const Instance& inst, unsigned precision = kDefaultPrecision);

/// Greedy shrinking: fewer pieces first, then smaller denominators, keeping
/// only candidates for which `still_fails` returns true.
template <class Pred>
Instance shrink(Instance inst, Pred still_fails);

struct SuiteRecord {
  std::string check;
  std::size_t case_id;
  CheckResult result;
  std::string digest;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<SuiteRecord> records;
  std::vector<SuiteRecord> minimal_witnesses;  // shrunk violations

  std::size_t violations() const;
  std::size_t inconclusive() const;
  /// One line per record, then the minimal witnesses, then
  /// `violations=<n> cases=<m> seed=<s>`.
  std::string serialize() const;
};

SuiteReport run_suite(const SuiteConfig& config);

// Implementation detail of shrink(); exposed so the template can be defined
// in the header.
std::vector<Instance> shrink_candidates(const Instance& inst);
std::size_t instance_size(const Instance& inst);

template <class Pred>
Instance shrink(Instance inst, Pred still_fails) {
  for (int round = 0; round < 500; ++round) {
    bool improved = false;
    const std::size_t size = instance_size(inst);
    for (auto& candidate : shrink_candidates(inst)) {
      if (instance_size(candidate) >= size) continue;
      if (still_fails(candidate)) {
        inst = std::move(candidate);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return inst;
}

}  // namespace rispace
