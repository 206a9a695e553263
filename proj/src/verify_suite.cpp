#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include <mpfr.h>

#include "rispace/error.hpp"
#include "rispace/text_format.hpp"
#include "rispace/verify.hpp"

namespace rispace {

namespace {

using Rng = std::mt19937_64;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng case_rng(std::uint64_t seed, std::size_t check, std::size_t case_id) {
  return Rng(mix(mix(mix(seed) ^ check) ^ case_id));
}

std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }
bool coin(Rng& rng, unsigned one_in) { return below(rng, one_in) == 0; }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& pool) {
  return pool[below(rng, pool.size())];
}

Rational random_value(Rng& rng) {
  static const long dens[] = {1, 2, 3, 4};
  const long d = dens[below(rng, 4)];
  return fraction(static_cast<long>(below(rng, 4 * d + 1)), d);
}

Rational positive_value(Rng& rng) {
  Rational v = random_value(rng);
  return v == 0 ? Rational(1) : v;
}

// Sorted distinct grid points; on a finite domain they lie in [0, gamma].
std::vector<Rational> random_points(Rng& rng, const Extent& extent, std::size_t count) {
  long scale_den;
  long span;
  if (extent.is_finite()) {
    static const long grid[] = {4, 6, 8, 12};
    scale_den = grid[below(rng, 4)];
    span = scale_den;
  } else {
    scale_den = static_cast<long>(1 + below(rng, 4));
    span = 6 * scale_den;
  }
  count = std::min<std::size_t>(count, span + 1);
  std::vector<long> ints;
  while (ints.size() < count) {
    const long x = static_cast<long>(below(rng, span + 1));
    if (std::find(ints.begin(), ints.end(), x) == ints.end()) ints.push_back(x);
  }
  std::sort(ints.begin(), ints.end());
  std::vector<Rational> out;
  for (long x : ints) {
    Rational r = fraction(x, scale_den);
    if (extent.is_finite()) r *= extent.value();
    out.push_back(r);
  }
  return out;
}

StepFunction random_function(Rng& rng, const Extent& extent, std::size_t max_pieces, bool allow_tail) {
  const std::size_t k = below(rng, max_pieces + 1);
  std::vector<Piece> pieces;
  if (k > 0) {
    const auto pts = random_points(rng, extent, k + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) pieces.push_back({pts[i], pts[i + 1], random_value(rng)});
  }
  Rational tail = 0;
  if (allow_tail && coin(rng, 3)) tail = positive_value(rng);
  if (extent.is_finite() && !pieces.empty() && pieces.back().right == extent.value()) tail = 0;
  return StepFunction(std::move(pieces), tail, extent);
}

// Increasing concave piecewise-linear gauge with random slopes.
ConcaveGauge random_pl_gauge(Rng& rng, const Extent& extent) {
  const Rational jump = coin(rng, 5) ? positive_value(rng) : Rational(0);
  Rational slope = static_cast<long>(1 + below(rng, 4));
  if (coin(rng, 2)) slope /= 2;
  const std::size_t k = below(rng, 4);
  std::vector<Rational> ts;
  for (const auto& t : random_points(rng, extent, k + 1)) {
    if (t > 0 && (extent.is_infinite() || t < extent.value())) ts.push_back(t);
  }
  std::vector<Knot> knots;
  Rational t_prev = 0;
  Rational v = jump;
  for (const auto& t : ts) {
    v += slope * (t - t_prev);
    knots.push_back({t, v});
    t_prev = t;
    static const Rational factors[] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    slope *= factors[below(rng, 5)];
    if (slope == 0) break;
  }
  return ConcaveGauge(PiecewiseLinearConcave(jump, std::move(knots), slope, extent));
}

bool grothendieck(const ConcaveGauge& psi) { return classify(psi).verdict != Condition::Neither; }

enum Need { AnyGauge = 0, NeedAB = 1, NeedPL = 2, NeedFinite = 4, NeedNoJump = 8 };

bool meets(const ConcaveGauge& psi, int need) {
  if ((need & NeedPL) && !psi.is_piecewise_linear()) return false;
  if ((need & NeedFinite) && psi.extent().is_infinite()) return false;
  if ((need & NeedNoJump) && psi.jump() != 0) return false;
  if ((need & NeedAB) && !grothendieck(psi)) return false;
  return true;
}

struct Generator {
  const SuiteConfig& config;
  std::vector<ConcaveGauge> pool;
  std::vector<Extent> extents;
  bool random_gauges;

  ConcaveGauge gauge(Rng& rng, int need) const {
    for (int attempt = 0; attempt < 64; ++attempt) {
      if (random_gauges && coin(rng, 2)) {
        Extent e = pick(rng, extents);
        if ((need & NeedFinite) && e.is_infinite()) e = Extent(1);
        auto g = random_pl_gauge(rng, e);
        if (meets(g, need)) return g;
      } else {
        const auto& g = pick(rng, pool);
        if (meets(g, need)) return g;
      }
    }
    for (const auto& g : pool) {
      if (meets(g, need)) return g;
    }
    throw Error(ErrorCode::InvalidArgument, "gauge pool has no gauge suitable for this check");
  }

  // A function with finite Marcinkiewicz norm.
  StepFunction member(Rng& rng, const ConcaveGauge& psi, bool allow_tail) const {
    for (int attempt = 0; attempt < 8; ++attempt) {
      auto f = random_function(rng, psi.extent(), config.max_pieces, allow_tail);
      if (marcinkiewicz_norm(f, psi).finite()) return f;
    }
    return random_function(rng, psi.extent(), config.max_pieces, false);
  }
};

// Disjoint u, v built from the slabs of the decreasing f, so that
// u* <= f* and v* <= f*.
std::pair<StepFunction, StepFunction> split_mass(Rng& rng, const StepFunction& f) {
  struct Slab {
    Rational length;
    Rational value;
    int owner;
  };
  std::vector<Slab> slabs;
  for (const auto& c : f.cells()) {
    if (c.value == 0) continue;
    const Rational len = c.right - c.left;
    const int parts = coin(rng, 2) ? 1 : 2;
    for (int i = 0; i < parts; ++i) {
      static const Rational shrink[] = {Rational(1), Rational(1), Rational(1, 2), Rational(3, 4)};
      slabs.push_back({len / parts, c.value * shrink[below(rng, 4)], static_cast<int>(below(rng, 2))});
    }
  }
  if (f.extent().is_finite() && f.tail_value() > 0 && f.tail_start() < f.extent().value()) {
    slabs.push_back({f.extent().value() - f.tail_start(), f.tail_value(), static_cast<int>(below(rng, 2))});
  }
  std::shuffle(slabs.begin(), slabs.end(), rng);

  const Extent& extent = f.extent();
  std::vector<Piece> up, vp;
  Rational pos = 0;
  for (const auto& s : slabs) {
    Rational gap = coin(rng, 2) ? Rational(0) : fraction(static_cast<long>(below(rng, 3)), 4);
    if (extent.is_finite()) gap *= extent.value();
    const Rational left = pos + gap;
    const Rational right = left + s.length;
    if (extent.is_finite() && right > extent.value()) continue;
    (s.owner == 0 ? up : vp).push_back({left, right, s.value});
    pos = right;
  }
  return {StepFunction(up, 0, extent), StepFunction(vp, 0, extent)};
}

Rational random_time(Rng& rng, const Rational& hi) {
  const long d = static_cast<long>(1 + below(rng, 8));
  return hi * fraction(static_cast<long>(1 + below(rng, d)), d);
}

// Exact scaling into the closed unit ball.
StepFunction normalize(const StepFunction& f, const NormValue& n, unsigned precision) {
  if (!n.finite() || n.get().is_zero()) return f;
  if (n.get().is_rational()) return scale(f, 1 / n.get().rational());
  return scale(f, 1 / n.enclose(precision).hi);
}

Instance generate(const std::string& check, Rng& rng, const Generator& gen) {
  const auto& config = gen.config;
  Instance inst;
  if (check == "superadditivity") {
    const Extent e = pick(rng, gen.extents);
    inst.functions = {random_function(rng, e, config.max_pieces, true),
                      random_function(rng, e, config.max_pieces, true)};
    const Rational span = e.is_finite() ? e.value() : Rational(8);
    const Rational t1 = random_time(rng, span);
    const Rational t2 = random_time(rng, span - t1 == 0 ? span : Rational(span - t1));
    inst.params = {t1, e.is_finite() && t1 + t2 > span ? Rational(span - t1) : t2};
  } else if (check == "disjoint_dilation") {
    const Extent e = pick(rng, gen.extents);
    const StepFunction f = rearrange(random_function(rng, e, config.max_pieces, e.is_finite()));
    auto [u, v] = split_mass(rng, f);
    inst.functions = {u, v, f};
    inst.alpha = e;
    if (coin(rng, 3)) inst.alpha = Extent(random_time(rng, e.is_finite() ? e.value() : Rational(8)));
  } else if (check == "pointwise_bound" || check == "transport_bound") {
    const auto psi = gen.gauge(rng, check == "transport_bound" ? NeedAB : AnyGauge);
    inst.gauge = psi;
    inst.functions = {gen.member(rng, psi, true)};
  } else if (check == "natural_sandwich") {
    const auto psi = gen.gauge(rng, NeedPL | NeedFinite);
    inst.gauge = psi;
    inst.functions = {gen.member(rng, psi, true)};
    const Rational gamma = psi.extent().value();
    Rational delta = random_time(rng, gamma);
    if (delta == gamma) delta = gamma / 2;
    inst.params = {delta};
  } else if (check == "psi_integral_bound") {
    const auto psi = gen.gauge(rng, NeedAB | NeedNoJump);
    inst.gauge = psi;
    const auto report = classify(psi);
    const Rational hi = report.verdict == Condition::B ? *report.delta : Rational(8);
    inst.params = {random_time(rng, hi)};
  } else if (check == "quasi_uniform_convexity") {
    const auto psi = gen.gauge(rng, NeedAB);
    inst.gauge = psi;
    const auto report = classify(psi);
    const auto norm = [&](const StepFunction& g) {
      return report.verdict == Condition::B ? natural_norm(g, psi, *report.delta) : marcinkiewicz_norm(g, psi);
    };
    StepFunction a = gen.member(rng, psi, false);
    StepFunction b = gen.member(rng, psi, false);
    // Make the pair disjoint: b keeps only the part where a vanishes.
    std::vector<Piece> kept;
    for (const auto& c : b.cells()) {
      if (c.value == 0) continue;
      for (const auto& s : a.slice(c.left, c.right)) {
        if (s.value == 0) kept.push_back({s.left, s.right, c.value});
      }
    }
    b = StepFunction(kept, 0, psi.extent());
    inst.functions = {normalize(a, norm(a), config.precision), normalize(b, norm(b), config.precision)};
  } else if (check == "holder") {
    const auto psi = gen.gauge(rng, NeedPL);
    inst.gauge = psi;
    inst.functions = {gen.member(rng, psi, true), gen.member(rng, psi, false)};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown check: " + check);
  }
  return inst;
}

const StepFunction& fn(const Instance& inst, std::size_t i) {
  if (inst.functions.size() <= i) throw Error(ErrorCode::InvalidArgument, "instance is missing a function");
  return inst.functions[i];
}

const Rational& param(const Instance& inst, std::size_t i) {
  if (inst.params.size() <= i) throw Error(ErrorCode::InvalidArgument, "instance is missing a parameter");
  return inst.params[i];
}

const ConcaveGauge& gauge_of(const Instance& inst) {
  if (!inst.gauge) throw Error(ErrorCode::InvalidArgument, "instance is missing a gauge");
  return *inst.gauge;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::size_t denominator_weight(const Rational& r) { return mpz_sizeinbase(r.get_den_mpz_t(), 2); }

// Candidate values for x with smaller denominators.
std::vector<Rational> simpler(const Rational& x) {
  std::vector<Rational> out;
  if (x.get_den() == 1) return out;
  for (long d : {1L, 2L, 4L}) {
    mpz_class n = x.get_num() * d;
    mpz_fdiv_q(n.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
    for (const mpz_class& m : {n, mpz_class(n + 1)}) {
      const Rational r = fraction(m, d);
      if (r.get_den() < x.get_den()) out.push_back(r);
    }
  }
  return out;
}

std::string line_for(const SuiteRecord& rec) {
  std::string out = "check=" + rec.check + " case=" + std::to_string(rec.case_id) +
                    " holds=" + to_string(rec.result.outcome) + " margin=" + to_string(rec.result.margin) +
                    " witness=" + to_string(rec.result.witness) + " digest=" + rec.digest;
  for (const auto& [k, v] : rec.result.notes) out += " " + k + "=" + v;
  return out;
}

}  // namespace

std::vector<ConcaveGauge> default_gauge_pool() {
  const Extent inf = Extent::infinite();
  return {
      remark_gauge(),
      ConcaveGauge(PiecewiseLinearConcave(0, {}, 1, inf)),
      ConcaveGauge(PiecewiseLinearConcave(0, {{1, 1}}, Rational(1, 2), inf)),
      ConcaveGauge::power(2, 1, inf),
      ConcaveGauge::power(Rational(3, 2), 1, inf),
      ConcaveGauge::power(3, 2, inf),
      ConcaveGauge::power(2, 1, Extent(1)),
      ConcaveGauge(PiecewiseLinearConcave(0, {{1, 1}}, 0, inf)),
      ConcaveGauge(PiecewiseLinearConcave(1, {}, 1, inf)),
  };
}

std::vector<std::string> suite_check_names() {
  return {"superadditivity", "disjoint_dilation",       "pointwise_bound", "natural_sandwich",
          "psi_integral_bound", "transport_bound", "quasi_uniform_convexity", "holder"};
}

std::string serialize(const Instance& inst) {
  std::string out;
  for (const auto& f : inst.functions) out += "[function]\n" + serialize(f);
  if (inst.gauge) out += "[gauge]\n" + serialize(*inst.gauge);
  for (const auto& p : inst.params) out += "param = " + to_string(p) + "\n";
  if (inst.alpha) out += "alpha = " + to_string(*inst.alpha) + "\n";
  return out;
}

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

CheckResult run_check(const std::string& name, const Instance& inst, unsigned precision) {
  if (name == "superadditivity") return check_superadditivity(fn(inst, 0), fn(inst, 1), param(inst, 0), param(inst, 1));
  if (name == "disjoint_dilation") {
    return check_disjoint_dilation(fn(inst, 0), fn(inst, 1), fn(inst, 2), inst.alpha.value_or(fn(inst, 2).extent()));
  }
  if (name == "pointwise_bound") return check_pointwise_bound(fn(inst, 0), gauge_of(inst));
  if (name == "natural_sandwich") return check_natural_sandwich(fn(inst, 0), gauge_of(inst), param(inst, 0));
  if (name == "psi_integral_bound") {
    return check_psi_integral_bound(gauge_of(inst), classify(gauge_of(inst)), param(inst, 0), precision);
  }
  if (name == "transport_bound") return check_transport_bound(fn(inst, 0), gauge_of(inst));
  if (name == "quasi_uniform_convexity") return check_quasi_uniform_convexity(fn(inst, 0), fn(inst, 1), gauge_of(inst));
  if (name == "holder") return check_holder(fn(inst, 0), fn(inst, 1), gauge_of(inst));
  throw Error(ErrorCode::InvalidArgument, "unknown check: " + name);
}

std::size_t instance_size(const Instance& inst) {
  std::size_t size = 0;
  for (const auto& f : inst.functions) {
    size += 1000 * (f.pieces().size() + (f.tail_value() != 0));
    for (const auto& p : f.pieces()) {
      size += denominator_weight(p.left) + denominator_weight(p.right) + denominator_weight(p.value);
    }
    size += denominator_weight(f.tail_value());
  }
  for (const auto& p : inst.params) size += denominator_weight(p);
  return size;
}

std::vector<Instance> shrink_candidates(const Instance& inst) {
  std::vector<Instance> out;
  const auto with_function = [&](std::size_t i, const std::function<StepFunction()>& make) {
    try {
      Instance c = inst;
      c.functions[i] = make();
      out.push_back(std::move(c));
    } catch (const Error&) {
    }
  };
  for (std::size_t i = 0; i < inst.functions.size(); ++i) {
    const StepFunction& f = inst.functions[i];
    const auto pieces = f.pieces();
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      with_function(i, [&] {
        auto ps = pieces;
        ps.erase(ps.begin() + static_cast<long>(j));
        return StepFunction(ps, f.tail_value(), f.extent());
      });
    }
    if (f.tail_value() != 0) with_function(i, [&] { return StepFunction(pieces, 0, f.extent()); });
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      for (int field = 0; field < 3; ++field) {
        const Rational& x = field == 0 ? pieces[j].left : field == 1 ? pieces[j].right : pieces[j].value;
        for (const auto& y : simpler(x)) {
          with_function(i, [&] {
            auto ps = pieces;
            (field == 0 ? ps[j].left : field == 1 ? ps[j].right : ps[j].value) = y;
            return StepFunction(ps, f.tail_value(), f.extent());
          });
        }
      }
    }
    for (const auto& y : simpler(f.tail_value())) with_function(i, [&] { return StepFunction(pieces, y, f.extent()); });
  }
  for (std::size_t j = 0; j < inst.params.size(); ++j) {
    for (const auto& y : simpler(inst.params[j])) {
      if (y <= 0) continue;
      Instance c = inst;
      c.params[j] = y;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::size_t SuiteReport::violations() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const SuiteRecord& r) {
    return r.result.outcome == Outcome::Violated;
  }));
}

std::size_t SuiteReport::inconclusive() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const SuiteRecord& r) {
    return r.result.outcome == Outcome::Inconclusive;
  }));
}

std::string SuiteReport::serialize() const {
  std::string out;
  for (const auto& r : records) out += line_for(r) + "\n";
  for (const auto& w : minimal_witnesses) {
    out += "# minimal witness " + line_for(w) + "\n";
    std::istringstream lines(w.result.instance);
    for (std::string l; std::getline(lines, l);) out += "#   " + l + "\n";
  }
  out += "inconclusive=" + std::to_string(inconclusive()) + "\n";
  out += "violations=" + std::to_string(violations()) + " cases=" + std::to_string(cases) +
         " seed=" + std::to_string(seed) + "\n";
  return out;
}

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.cases == 0) throw Error(ErrorCode::InvalidArgument, "cases must be at least 1");
  Generator gen{config, config.gauge_pool.empty() ? default_gauge_pool() : config.gauge_pool,
                config.extent_pool.empty() ? std::vector<Extent>{Extent(1), Extent(Rational(3, 2)), Extent::infinite()}
                                           : config.extent_pool,
                config.gauge_pool.empty()};

  const auto all = suite_check_names();
  const auto checks = config.checks.empty() ? all : config.checks;
  std::vector<std::size_t> check_ids;
  for (const auto& c : checks) {
    const auto it = std::find(all.begin(), all.end(), c);
    if (it == all.end()) throw Error(ErrorCode::InvalidArgument, "unknown check: " + c);
    check_ids.push_back(static_cast<std::size_t>(it - all.begin()));
  }

  const std::size_t total = checks.size() * config.cases;
  std::vector<SuiteRecord> records(total);
  std::vector<std::optional<Instance>> failing(total);

  const auto run_one = [&](std::size_t index) {
    const std::size_t ci = index / config.cases;
    const std::size_t case_id = index % config.cases;
    const std::string& name = checks[ci];
    Rng rng = case_rng(config.seed, check_ids[ci], case_id);
    SuiteRecord& rec = records[index];
    rec.check = name;
    rec.case_id = case_id;
    Instance inst;
    try {
      inst = generate(name, rng, gen);
      rec.digest = digest(rispace::serialize(inst));
      rec.result = run_check(name, inst, config.precision);
    } catch (const Error& e) {
      rec.result.name = name;
      rec.result.instance = rispace::serialize(inst);
      rec.result.outcome = Outcome::Inconclusive;
      rec.result.notes.emplace_back("error", std::string(to_string(e.code())));
      rec.result.notes.emplace_back("message", e.what());
      if (rec.digest.empty()) rec.digest = digest(rec.result.instance);
    }
    if (rec.result.outcome == Outcome::Violated) failing[index] = inst;
  };

  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) run_one(i);
      mpfr_free_cache2(MPFR_FREE_LOCAL_CACHE);
    });
  }
  for (auto& t : pool) t.join();

  SuiteReport report;
  report.seed = config.seed;
  report.cases = config.cases;
  report.records = std::move(records);
  for (std::size_t i = 0; i < total; ++i) {
    if (!failing[i]) continue;
    const std::string& name = report.records[i].check;
    const Instance minimal = shrink(*failing[i], [&](const Instance& c) {
      try {
        return run_check(name, c, config.precision).outcome == Outcome::Violated;
      } catch (const Error&) {
        return false;
      }
    });
    SuiteRecord w = report.records[i];
    w.result = run_check(name, minimal, config.precision);
    w.digest = digest(rispace::serialize(minimal));
    report.minimal_witnesses.push_back(std::move(w));
  }
  return report;
}

}  // namespace rispace
