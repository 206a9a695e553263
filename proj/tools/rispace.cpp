// Command-line front end for the rispace library.
//
// Exit codes: 0 ok, 1 violation, 2 parse or usage error, 3 infinite norm.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <sstream>

#include "rispace/error.hpp"
#include "rispace/gauge.hpp"
#include "rispace/norms.hpp"
#include "rispace/text_format.hpp"
#include "rispace/verify.hpp"

using namespace rispace;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kInfinite = 3;

enum class Format { Text, Csv, JsonLines };

const std::map<std::string, Format> kFormats{
    {"text", Format::Text}, {"csv", Format::Csv}, {"json-lines", Format::JsonLines}};

struct Options {
  std::string gauge_file;
  std::vector<std::string> gauge_files;
  std::string fn_file;
  std::string by_file;
  std::string variant = "plain";
  std::string delta;
  std::string p;
  std::string up_to = "inf";
  unsigned precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::size_t max_pieces = 6;
  std::vector<std::string> checks;
  std::string what = "head";
  std::size_t samples = 16;
  int digits = 12;
  bool exact = false;
  Format out = Format::Text;
  Format curve_out = Format::Csv;
};

// A parse failure inside a named input file.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T, class Parse>
T load(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

ConcaveGauge load_gauge(const std::string& path) {
  return load<ConcaveGauge>(path, [](std::string_view t) { return parse_gauge(t); });
}

StepFunction load_function(const std::string& path) {
  return load<StepFunction>(path, [](std::string_view t) { return parse_step_function(t); });
}

Rational flag_rational(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw InputError(std::string("--") + flag + ": not a rational: '" + text + "'");
  }
}

std::string render(const ReportFields& fields, Format out) {
  switch (out) {
    case Format::Text: return render_text(fields);
    case Format::Csv: {
      std::string s = "key,value\n";
      for (const auto& [k, v] : fields) s += k + "," + (v.find(',') == std::string::npos ? v : "\"" + v + "\"") + "\n";
      return s;
    }
    case Format::JsonLines: {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : fields) j[k] = v;
      return j.dump() + "\n";
    }
  }
  return {};
}

int cmd_norm(const Options& o, std::string& out) {
  const StepFunction f = load_function(o.fn_file);
  NormValue value;
  if (o.variant == "weaklp") {
    if (o.p.empty()) throw Error(ErrorCode::InvalidArgument, "--variant weaklp requires --p");
    value = weak_lp_norm(f, flag_rational(o.p, "p"));
  } else {
    if (o.gauge_file.empty()) throw Error(ErrorCode::InvalidArgument, "--gauge is required");
    const ConcaveGauge psi = load_gauge(o.gauge_file);
    if (o.variant == "plain") {
      value = marcinkiewicz_norm(f, psi);
    } else if (o.variant == "natural") {
      if (o.delta.empty()) throw Error(ErrorCode::InvalidArgument, "--variant natural requires --delta");
      value = natural_norm(f, psi, flag_rational(o.delta, "delta"));
    } else {
      value = lorentz_norm(f, psi);
    }
  }
  out = render(report_fields(value, o.precision, o.exact), o.out);
  return value.finite() ? kOk : kInfinite;
}

int cmd_classify(const Options& o, std::string& out) {
  out = render(report_fields(classify(load_gauge(o.gauge_file))), o.out);
  return kOk;
}

int cmd_submajorize(const Options& o, std::string& out) {
  const StepFunction f = load_function(o.fn_file);
  const StepFunction g = load_function(o.by_file);
  const Extent up_to = parse_extent(o.up_to);
  out = render({{"submajorized", submajorizes(g, f, up_to) ? "yes" : "no"}, {"up_to", to_string(up_to)}}, o.out);
  return kOk;
}

std::string record_json(const SuiteRecord& r, bool witness) {
  nlohmann::ordered_json j;
  if (witness) j["minimal_witness"] = true;
  j["check"] = r.check;
  j["case"] = r.case_id;
  j["holds"] = to_string(r.result.outcome);
  j["margin"] = to_string(r.result.margin);
  j["witness"] = to_string(r.result.witness);
  j["digest"] = r.digest;
  for (const auto& [k, v] : r.result.notes) j[k] = v;
  if (witness) j["instance"] = r.result.instance;
  return j.dump() + "\n";
}

int cmd_verify(const Options& o, std::string& out) {
  SuiteConfig config;
  config.seed = o.seed;
  config.cases = o.cases;
  config.max_pieces = o.max_pieces;
  config.precision = o.precision;
  config.checks = o.checks;
  for (const auto& path : o.gauge_files) config.gauge_pool.push_back(load_gauge(path));
  const SuiteReport report = run_suite(config);
  if (o.out == Format::JsonLines) {
    for (const auto& r : report.records) out += record_json(r, false);
    for (const auto& r : report.minimal_witnesses) out += record_json(r, true);
    nlohmann::ordered_json summary;
    summary["violations"] = report.violations();
    summary["inconclusive"] = report.inconclusive();
    summary["cases"] = report.cases;
    summary["seed"] = report.seed;
    out += summary.dump() + "\n";
  } else {
    out = report.serialize();
  }
  return report.violations() == 0 ? kOk : kViolation;
}

std::vector<Rational> curve_grid(const std::vector<Rational>& breakpoints, const Rational& lo, const Rational& hi,
                                 bool include_lo, bool include_hi, std::size_t samples) {
  std::vector<Rational> ts;
  for (const auto& t : breakpoints) {
    if (t > lo && t < hi) ts.push_back(t);
  }
  for (std::size_t i = 1; i <= samples; ++i) {
    ts.push_back(lo + (hi - lo) * fraction(static_cast<long>(i), static_cast<long>(samples + 1)));
  }
  if (include_lo) ts.push_back(lo);
  if (include_hi) ts.push_back(hi);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::string decimal(const Radical& r, const Options& o) {
  if (o.exact) return r.to_string();
  if (r.is_rational()) return to_decimal(r.rational(), o.digits);
  return to_decimal(r.enclose(o.precision).midpoint(), o.digits);
}

int cmd_curve(const Options& o, std::string& out) {
  if (o.samples < 2) throw Error(ErrorCode::InvalidArgument, "--samples must be at least 2");
  std::optional<ConcaveGauge> psi;
  std::optional<StepFunction> f;
  if (!o.gauge_file.empty()) psi = load_gauge(o.gauge_file);
  if (!o.fn_file.empty()) f = load_function(o.fn_file);

  std::vector<std::pair<Rational, Radical>> rows;
  const auto right_end = [](const Extent& e, const std::vector<Rational>& bps) -> std::pair<Rational, bool> {
    if (e.is_finite()) return {e.value(), true};
    return {bps.empty() ? Rational(4) : Rational(2 * bps.back()), false};
  };
  if (o.what == "head") {
    if (!f) throw Error(ErrorCode::InvalidArgument, "--what head requires --fn");
    const auto profile = head_integral_profile(*f);
    std::vector<Rational> bps;
    for (const auto& k : profile.knots()) bps.push_back(k.t);
    const auto [hi, closed] = right_end(f->extent(), bps);
    for (const auto& t : curve_grid(bps, 0, hi, true, true, o.samples)) rows.push_back({t, Radical(profile(t))});
    (void)closed;
  } else if (o.what == "ratio") {
    if (!psi) throw Error(ErrorCode::InvalidArgument, "--what ratio requires --gauge");
    const auto profile = doubling_profile(*psi);
    std::vector<Rational> bps;
    for (const auto& s : profile.segments) {
      bps.push_back(s.left);
      if (s.right) bps.push_back(*s.right);
    }
    std::sort(bps.begin(), bps.end());
    Rational hi;
    if (psi->extent().is_finite()) {
      hi = psi->extent().value() / 2;
    } else {
      hi = bps.empty() || bps.back() == 0 ? Rational(4) : Rational(2 * bps.back());
    }
    for (const auto& t : curve_grid(bps, 0, hi, false, false, o.samples)) rows.push_back({t, profile.at(t)});
  } else if (o.what == "bigpsi") {
    if (!psi) throw Error(ErrorCode::InvalidArgument, "--what bigpsi requires --gauge");
    std::vector<Rational> bps;
    if (psi->is_piecewise_linear()) {
      for (const auto& k : psi->profile().knots()) bps.push_back(k.t);
    }
    const auto [hi, closed] = right_end(psi->extent(), bps);
    for (const auto& t : curve_grid(bps, 0, hi, false, closed, o.samples)) rows.push_back({t, big_psi_eval(*psi, t)});
  } else {
    throw Error(ErrorCode::InvalidArgument, "--what must be head, ratio or bigpsi");
  }

  if (o.curve_out == Format::JsonLines) {
    for (const auto& [t, v] : rows) {
      nlohmann::ordered_json j;
      j["t"] = o.exact ? to_string(t) : to_decimal(t, o.digits);
      j["value"] = decimal(v, o);
      out += j.dump() + "\n";
    }
  } else {
    const char* sep = o.curve_out == Format::Csv ? "," : " ";
    out = std::string("t") + sep + "value\n";
    for (const auto& [t, v] : rows) {
      out += (o.exact ? to_string(t) : to_decimal(t, o.digits)) + sep + decimal(v, o) + "\n";
    }
  }
  return kOk;
}

int cmd_remark(const Options& o, std::string& out) {
  const auto results = o.gauge_file.empty() ? remark_counterexample() : remark_counterexample(load_gauge(o.gauge_file));
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.outcome != Outcome::Violated;
    ReportFields fields{{"check", r.name}, {"holds", to_string(r.outcome)}, {"witness", to_string(r.witness)}};
    for (const auto& n : r.notes) fields.push_back(n);
    if (o.out == Format::Text) {
      std::string line;
      for (const auto& [k, v] : fields) line += (line.empty() ? "" : " ") + k + "=" + v;
      out += line + "\n";
    } else {
      out += render(fields, o.out);
    }
  }
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Marcinkiewicz spaces of step functions"};
  app.require_subcommand(1);
  Options o;

  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "text, csv or json-lines")->transform(CLI::CheckedTransformer(kFormats));
  };
  const auto add_precision = [&](CLI::App* cmd) {
    cmd->add_option("--precision", o.precision, "enclosure precision in bits")->check(CLI::Range(8u, 1u << 16));
  };

  auto* norm = app.add_subcommand("norm", "norm of a step function");
  norm->add_option("--gauge", o.gauge_file, "gauge file")->check(CLI::ExistingFile);
  norm->add_option("--fn", o.fn_file, "function file")->required()->check(CLI::ExistingFile);
  norm->add_option("--variant", o.variant, "plain, natural, lorentz or weaklp")
      ->check(CLI::IsMember({"plain", "natural", "lorentz", "weaklp"}));
  norm->add_option("--delta", o.delta, "cut-off for the natural norm");
  norm->add_option("--p", o.p, "exponent for weaklp");
  norm->add_flag("--exact", o.exact, "always print the enclosure fields");
  add_precision(norm);
  add_out(norm);

  auto* cls = app.add_subcommand("classify", "doubling conditions of a gauge");
  cls->add_option("--gauge", o.gauge_file, "gauge file")->required()->check(CLI::ExistingFile);
  add_out(cls);

  auto* sub = app.add_subcommand("submajorize", "is --fn submajorized by --by");
  sub->add_option("--fn", o.fn_file, "function file")->required()->check(CLI::ExistingFile);
  sub->add_option("--by", o.by_file, "dominating function file")->required()->check(CLI::ExistingFile);
  sub->add_option("--up-to", o.up_to, "compare on [0, T) (default: whole domain)");
  add_out(sub);

  auto* verify = app.add_subcommand("verify", "randomized inequality suite");
  verify->add_option("--seed", o.seed, "generator seed");
  verify->add_option("--cases", o.cases, "cases per check")->check(CLI::PositiveNumber);
  verify->add_option("--max-pieces", o.max_pieces, "pieces per generated function")->check(CLI::PositiveNumber);
  verify->add_option("--gauge", o.gauge_files, "gauge pool (repeatable; default: built-in pool)")
      ->check(CLI::ExistingFile);
  verify->add_option("--check", o.checks, "restrict to named checks (repeatable)")
      ->check(CLI::IsMember(suite_check_names()));
  add_precision(verify);
  verify->add_option("--out", o.out, "text or json-lines")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text},
                                                                        {"json-lines", Format::JsonLines}}));

  auto* curve = app.add_subcommand("curve", "plot-ready samples");
  curve->add_option("--gauge", o.gauge_file, "gauge file")->check(CLI::ExistingFile);
  curve->add_option("--fn", o.fn_file, "function file")->check(CLI::ExistingFile);
  curve->add_option("--what", o.what, "head, ratio or bigpsi")->check(CLI::IsMember({"head", "ratio", "bigpsi"}));
  curve->add_option("--samples", o.samples, "interior sample points (at least 2)");
  curve->add_option("--digits", o.digits, "significant digits of decimal output")->check(CLI::Range(1, 60));
  curve->add_flag("--exact", o.exact, "print exact values instead of decimals");
  add_precision(curve);
  curve->add_option("--out", o.curve_out, "csv (default), text or json-lines")
      ->transform(CLI::CheckedTransformer(kFormats));

  auto* remark = app.add_subcommand("remark", "the min(2t,1) counterexample");
  remark->add_option("--gauge", o.gauge_file, "alternative gauge on (0, 1)")->check(CLI::ExistingFile);
  add_out(remark);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  std::string out;
  int code = kOk;
  try {
    if (norm->parsed()) code = cmd_norm(o, out);
    else if (cls->parsed()) code = cmd_classify(o, out);
    else if (sub->parsed()) code = cmd_submajorize(o, out);
    else if (verify->parsed()) code = cmd_verify(o, out);
    else if (curve->parsed()) code = cmd_curve(o, out);
    else if (remark->parsed()) code = cmd_remark(o, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::cout << out;
  return code;
}
