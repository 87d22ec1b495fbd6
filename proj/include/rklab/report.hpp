#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rklab/controller.hpp"

namespace rklab {

// Shortest decimal that parses back to the same double.
std::string format_double(double v);
// Inverse of format_double; throws UsageError on malformed text.
double parse_double(std::string_view text);

// Column order of the per-step trace.
const std::vector<std::string>& trace_csv_columns();

// Header plus one row per accepted step. Vector-valued fields join their
// components with ';'; fields without oracle data are empty cells.
void write_trace_csv(std::ostream& out, const Trace& trace);
std::vector<StepRecord> read_trace_csv(std::istream& in);

// {accepted, rejected, final_x, final_delta_lower, crossing_index, crossing_x,
//  condition_violation_index, bound_coefficient}; absent values are null.
nlohmann::json summary_json(const Trace& trace);

// x, |eps_lower|, |alpha_term| per accepted step. Throws MissingDiagnostics
// when the trace carries no oracle data.
void write_figure1_csv(std::ostream& out, const Trace& trace);

}  // namespace rklab
