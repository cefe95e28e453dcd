#pragma once

#include "dyadic/haar_series.hpp"
#include "dyadic/norms.hpp"
#include "dyadic/step_function.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dyadic {

using Cell = std::variant<std::monostate, bool, int64_t, double, std::string>;

// One tabular experiment result: a fixed column schema with one row per unit
// of work (sample, truncation level, parameter value), plus named summary
// scalars and an overall verdict. CSV output is the rectangular table only
// (header + rows); JSON carries everything.
struct ExperimentReport {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    std::string verdict;
};

// Shortest round-trip decimal form (deterministic across platforms).
std::string format_double(double v);
std::string format_cell(const Cell& c);

std::string to_csv(const ExperimentReport& rep);
std::string to_json_string(const ExperimentReport& rep, int indent = 2);

std::string to_json_string(const HaarSeries& f, int indent = 2);
std::string to_json_string(const StepFunction& g, int indent = 2);
std::string to_json_string(const NormReport& rep, int indent = 2);
std::string norm_report_csv(const NormReport& rep);

// Parses {"coefficients": [{"scale": k, "index": n, "value": v}, ...]};
// malformed documents raise std::runtime_error naming the offending field.
HaarSeries haar_series_from_json(const std::string& text);

} // namespace dyadic
