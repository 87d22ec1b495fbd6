#include "rklab/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "rklab/errors.hpp"

namespace rklab {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw IoError("could not format a double");
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw UsageError("malformed number '" + std::string(text) + "'");
  return v;
}

const std::vector<std::string>& trace_csv_columns() {
  static const std::vector<std::string> columns = {
      "i",           "x",          "h",        "rejects",    "w_lower", "w_higher",
      "eps_lower",   "beta_lower", "delta_lower", "delta_higher", "alpha_term",
      "cond_lhs",    "cond_rhs",   "cond_holds", "bound",      "clamped"};
  return columns;
}

namespace {

std::string join_state(const State& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ';';
    out += format_double(s[k]);
  }
  return out;
}

std::string join_state(const std::optional<State>& s) { return s ? join_state(*s) : ""; }

State split_state(std::string_view cell) {
  State out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    const std::size_t stop = std::min(cell.find(';', start), cell.size());
    out.push_back(parse_double(cell.substr(start, stop - start)));
    start = stop + 1;
  }
  return out;
}

std::optional<State> split_optional_state(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  return split_state(cell);
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::size_t parse_count(std::string_view cell) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || end != cell.data() + cell.size())
    throw UsageError("malformed integer '" + std::string(cell) + "'");
  return v;
}

bool parse_flag(std::string_view cell) {
  if (cell == "1") return true;
  if (cell == "0") return false;
  throw UsageError("malformed flag '" + std::string(cell) + "'");
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const auto& columns = trace_csv_columns();
  for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
  out << '\n';
  for (const auto& r : trace.records) {
    out << r.i << ',' << format_double(r.x) << ',' << format_double(r.h) << ','
        << r.rejects << ',' << join_state(r.w_lower) << ',' << join_state(r.w_higher)
        << ',' << join_state(r.eps_lower) << ',' << join_state(r.beta_lower) << ','
        << join_state(r.delta_lower) << ',' << join_state(r.delta_higher) << ','
        << join_state(r.alpha_term) << ',' << format_double(r.cond_lhs) << ','
        << (r.cond_rhs ? format_double(*r.cond_rhs) : "") << ','
        << (r.cond_holds ? (*r.cond_holds ? "1" : "0") : "") << ','
        << format_double(r.bound) << ',' << (r.clamped ? "1" : "0") << '\n';
  }
  if (!out) throw IoError("failed writing trace CSV");
}

std::vector<StepRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("trace CSV is empty");
  const auto header = split_row(line);
  const auto& columns = trace_csv_columns();
  if (header.size() != columns.size() ||
      !std::equal(header.begin(), header.end(), columns.begin()))
    throw UsageError("trace CSV header does not match the expected columns");

  std::vector<StepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != columns.size())
      throw UsageError("trace CSV row has " + std::to_string(cells.size()) + " cells");
    StepRecord r;
    r.i = parse_count(cells[0]);
    r.x = parse_double(cells[1]);
    r.h = parse_double(cells[2]);
    r.rejects = parse_count(cells[3]);
    r.w_lower = split_state(cells[4]);
    r.w_higher = split_state(cells[5]);
    r.eps_lower = split_optional_state(cells[6]);
    r.beta_lower = split_state(cells[7]);
    r.delta_lower = split_optional_state(cells[8]);
    r.delta_higher = split_optional_state(cells[9]);
    r.alpha_term = split_optional_state(cells[10]);
    r.cond_lhs = parse_double(cells[11]);
    if (!cells[12].empty()) r.cond_rhs = parse_double(cells[12]);
    if (!cells[13].empty()) r.cond_holds = parse_flag(cells[13]);
    r.bound = parse_double(cells[14]);
    r.clamped = parse_flag(cells[15]);
    records.push_back(std::move(r));
  }
  return records;
}

nlohmann::json summary_json(const Trace& trace) {
  const TraceSummary& s = trace.summary;
  nlohmann::json j;
  j["accepted"] = s.accepted;
  j["rejected"] = s.rejected;
  j["final_x"] = s.final_x;
  j["final_delta_lower"] =
      s.final_delta_lower ? nlohmann::json(dominant(*s.final_delta_lower)) : nullptr;
  j["crossing_index"] = s.crossing ? nlohmann::json(s.crossing->index) : nullptr;
  j["crossing_x"] = s.crossing ? nlohmann::json(s.crossing->x) : nullptr;
  j["condition_violation_index"] =
      s.condition_violation_index ? nlohmann::json(*s.condition_violation_index) : nullptr;
  j["bound_coefficient"] = s.bound_coefficient;
  return j;
}

void write_figure1_csv(std::ostream& out, const Trace& trace) {
  for (const auto& r : trace.records) {
    if (!r.eps_lower || !r.alpha_term)
      throw MissingDiagnostics("trace has no exact-solution diagnostics to plot");
  }
  out << "x,abs_eps_lower,abs_alpha_term\n";
  for (const auto& r : trace.records) {
    out << format_double(r.x) << ',' << format_double(inf_norm(*r.eps_lower)) << ','
        << format_double(inf_norm(*r.alpha_term)) << '\n';
  }
  if (!out) throw IoError("failed writing figure CSV");
}

}  // namespace rklab
