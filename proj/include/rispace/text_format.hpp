#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rispace/gauge.hpp"
#include "rispace/norms.hpp"
#include "rispace/step_function.hpp"

namespace rispace {

// Line-oriented `key = value` formats. Blank lines and lines starting with
// '#' are ignored. Readers throw ParseError with 1-based line/column.
//
// Function:  gamma = <p/q | inf>
//            piece = <left> <right> <value>     (repeated, sorted)
//            tail = <p/q>
// Gauge:     kind = pl | power
//            gamma = <p/q | inf>
//            pl:    jump = <p/q>, knot = <t> <value> (repeated), final_slope = <p/q>
//            power: p = <p/q>, coeff = <p/q>

std::string serialize(const StepFunction& f);
StepFunction parse_step_function(std::string_view text);

std::string serialize(const ConcaveGauge& psi);
ConcaveGauge parse_gauge(std::string_view text);

using ReportFields = std::vector<std::pair<std::string, std::string>>;

ReportFields report_fields(const ConditionReport& report);
/// norm, attained_at, finite; plus the enclosure and precision_bits when
/// the value is irrational or `with_enclosure` is set.
ReportFields report_fields(const NormValue& norm, unsigned precision, bool with_enclosure = false);

/// `key = value` lines.
std::string render_text(const ReportFields& fields);

std::string read_file(const std::string& path);

}  // namespace rispace
