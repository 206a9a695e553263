#include "rispace/text_format.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "rispace/error.hpp"

namespace rispace {

namespace {

struct Token {
  std::string text;
  int column;
};

struct Line {
  int number;
  std::string key;
  int key_column;
  std::vector<Token> values;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    pos = eol + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '=') ++i;
      if (i == start) ++i;  // a lone '='
      tokens.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (tokens.empty() || tokens[0].text[0] == '#') continue;
    if (tokens.size() < 2 || tokens[1].text != "=") {
      const int col = tokens.size() < 2 ? static_cast<int>(raw.size()) + 1 : tokens[1].column;
      throw ParseError(number, col, "expected 'key = value'");
    }
    out.push_back({number, tokens[0].text, tokens[0].column, {tokens.begin() + 2, tokens.end()}});
  }
  return out;
}

void expect_arity(const Line& line, std::size_t n) {
  if (line.values.size() != n) {
    const int col = line.values.size() > n ? line.values[n].column : line.key_column;
    throw ParseError(line.number, col,
                     "'" + line.key + "' expects " + std::to_string(n) + " value" + (n == 1 ? "" : "s"));
  }
}

Rational rational_at(const Line& line, std::size_t i) {
  try {
    return parse_rational(line.values[i].text);
  } catch (const Error& e) {
    throw ParseError(line.number, line.values[i].column, "invalid rational '" + line.values[i].text + "'");
  }
}

Extent extent_at(const Line& line) {
  expect_arity(line, 1);
  try {
    const Extent e = parse_extent(line.values[0].text);
    if (e.is_finite() && e.value() <= 0) throw Error(ErrorCode::InvalidArgument, "nonpositive");
    return e;
  } catch (const Error&) {
    throw ParseError(line.number, line.values[0].column, "gamma must be a positive rational or 'inf'");
  }
}

[[noreturn]] void unknown_key(const Line& line) {
  throw ParseError(line.number, line.key_column, "unknown key '" + line.key + "'");
}

template <class Build>
auto construct(int line, Build&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, 1, e.what());
  }
}

}  // namespace

std::string serialize(const StepFunction& f) {
  std::ostringstream out;
  out << "gamma = " << to_string(f.extent()) << '\n';
  for (const auto& p : f.pieces()) {
    out << "piece = " << to_string(p.left) << ' ' << to_string(p.right) << ' ' << to_string(p.value) << '\n';
  }
  out << "tail = " << to_string(f.tail_value()) << '\n';
  return out.str();
}

StepFunction parse_step_function(std::string_view text) {
  std::optional<Extent> gamma;
  std::vector<Piece> pieces;
  Rational tail = 0;
  int last_line = 1;
  for (const auto& line : tokenize(text)) {
    last_line = line.number;
    if (line.key == "gamma") {
      gamma = extent_at(line);
    } else if (line.key == "piece") {
      expect_arity(line, 3);
      Piece p{rational_at(line, 0), rational_at(line, 1), rational_at(line, 2)};
      if (p.left < 0 || p.right < p.left) throw ParseError(line.number, line.values[1].column, "invalid interval");
      if (!pieces.empty() && p.left < pieces.back().right) {
        throw ParseError(line.number, line.values[0].column, "pieces must be sorted and disjoint");
      }
      if (p.value < 0) throw ParseError(line.number, line.values[2].column, "negative value");
      pieces.push_back(std::move(p));
    } else if (line.key == "tail") {
      expect_arity(line, 1);
      tail = rational_at(line, 0);
      if (tail < 0) throw ParseError(line.number, line.values[0].column, "negative value");
    } else {
      unknown_key(line);
    }
  }
  if (!gamma) throw ParseError(last_line, 1, "missing 'gamma'");
  return construct(last_line, [&] { return StepFunction(pieces, tail, *gamma); });
}

std::string serialize(const ConcaveGauge& psi) {
  std::ostringstream out;
  if (psi.is_power()) {
    out << "kind = power\n"
        << "gamma = " << to_string(psi.extent()) << '\n'
        << "p = " << to_string(psi.power_law().p) << '\n'
        << "coeff = " << to_string(psi.power_law().coefficient) << '\n';
    return out.str();
  }
  const auto& prof = psi.profile();
  out << "kind = pl\n"
      << "gamma = " << to_string(psi.extent()) << '\n'
      << "jump = " << to_string(prof.jump()) << '\n';
  for (const auto& k : prof.knots()) out << "knot = " << to_string(k.t) << ' ' << to_string(k.value) << '\n';
  out << "final_slope = " << to_string(prof.final_slope()) << '\n';
  return out.str();
}

ConcaveGauge parse_gauge(std::string_view text) {
  std::optional<std::string> kind;
  std::optional<Extent> gamma;
  Rational jump = 0, final_slope = 0;
  std::vector<Knot> knots;
  std::optional<Rational> p, coeff;
  int last_line = 1;
  for (const auto& line : tokenize(text)) {
    last_line = line.number;
    if (line.key == "kind") {
      expect_arity(line, 1);
      if (line.values[0].text != "pl" && line.values[0].text != "power") {
        throw ParseError(line.number, line.values[0].column, "kind must be 'pl' or 'power'");
      }
      kind = line.values[0].text;
    } else if (line.key == "gamma") {
      gamma = extent_at(line);
    } else if (line.key == "jump") {
      expect_arity(line, 1);
      jump = rational_at(line, 0);
    } else if (line.key == "knot") {
      expect_arity(line, 2);
      knots.push_back({rational_at(line, 0), rational_at(line, 1)});
    } else if (line.key == "final_slope") {
      expect_arity(line, 1);
      final_slope = rational_at(line, 0);
    } else if (line.key == "p") {
      expect_arity(line, 1);
      p = rational_at(line, 0);
    } else if (line.key == "coeff") {
      expect_arity(line, 1);
      coeff = rational_at(line, 0);
    } else {
      unknown_key(line);
    }
  }
  if (!kind) throw ParseError(last_line, 1, "missing 'kind'");
  if (!gamma) throw ParseError(last_line, 1, "missing 'gamma'");
  if (*kind == "power") {
    if (!p) throw ParseError(last_line, 1, "missing 'p'");
    return construct(last_line, [&] { return ConcaveGauge::power(*p, coeff.value_or(1), *gamma); });
  }
  return construct(last_line, [&] { return ConcaveGauge(PiecewiseLinearConcave(jump, knots, final_slope, *gamma)); });
}

ReportFields report_fields(const ConditionReport& report) {
  ReportFields out;
  out.emplace_back("verdict", to_string(report.verdict));
  out.emplace_back("beta", report.beta ? report.beta->to_string() : "none");
  out.emplace_back("delta", report.delta ? to_string(*report.delta) : "none");
  out.emplace_back("liminf_at_zero", report.liminf_at_zero.to_string());
  out.emplace_back("liminf_at_infinity",
                   report.liminf_at_infinity ? report.liminf_at_infinity->to_string() : "none");
  out.emplace_back("bounded_at_infinity", report.bounded_at_infinity ? "yes" : "no");
  out.emplace_back("grothendieck", report.grothendieck ? "yes" : "no");
  return out;
}

ReportFields report_fields(const NormValue& norm, unsigned precision, bool with_enclosure) {
  ReportFields out;
  if (!norm.finite()) {
    out.emplace_back("norm", "inf");
  } else if (norm.get().is_rational() && !with_enclosure) {
    out.emplace_back("norm", to_string(norm.get().rational()));
  } else {
    const Enclosure e = norm.enclose(precision);
    out.emplace_back("norm", "[" + to_string(e.lo) + ", " + to_string(e.hi) + "]");
    out.emplace_back("norm_exact", norm.get().to_string());
    out.emplace_back("precision_bits", std::to_string(precision));
  }
  out.emplace_back("attained_at", to_string(norm.attained_at));
  out.emplace_back("finite", norm.finite() ? "yes" : "no");
  return out;
}

std::string render_text(const ReportFields& fields) {
  std::string out;
  for (const auto& [k, v] : fields) out += k + " = " + v + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace rispace
