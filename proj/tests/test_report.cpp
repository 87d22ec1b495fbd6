#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "rklab/errors.hpp"
#include "rklab/report.hpp"

using namespace rklab;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const std::optional<State>& a, const std::optional<State>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  if (a->size() != b->size()) return false;
  for (std::size_t k = 0; k < a->size(); ++k)
    if (!same_bits((*a)[k], (*b)[k])) return false;
  return true;
}

void check_round_trip(const Trace& trace) {
  std::stringstream buf;
  write_trace_csv(buf, trace);
  const auto back = read_trace_csv(buf);
  REQUIRE(back.size() == trace.records.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    const auto& a = trace.records[k];
    const auto& b = back[k];
    CHECK(a.i == b.i);
    CHECK(a.rejects == b.rejects);
    CHECK(same_bits(a.x, b.x));
    CHECK(same_bits(a.h, b.h));
    CHECK(same_bits(std::optional<State>(a.w_lower), std::optional<State>(b.w_lower)));
    CHECK(same_bits(std::optional<State>(a.w_higher), std::optional<State>(b.w_higher)));
    CHECK(same_bits(std::optional<State>(a.beta_lower), std::optional<State>(b.beta_lower)));
    CHECK(same_bits(a.eps_lower, b.eps_lower));
    CHECK(same_bits(a.delta_lower, b.delta_lower));
    CHECK(same_bits(a.delta_higher, b.delta_higher));
    CHECK(same_bits(a.alpha_term, b.alpha_term));
    CHECK(same_bits(a.cond_lhs, b.cond_lhs));
    CHECK(a.cond_rhs.has_value() == b.cond_rhs.has_value());
    if (a.cond_rhs) CHECK(same_bits(*a.cond_rhs, *b.cond_rhs));
    CHECK(a.cond_holds == b.cond_holds);
    CHECK(same_bits(a.bound, b.bound));
    CHECK(a.clamped == b.clamped);
  }
}

}  // namespace

TEST_CASE("format_double is the shortest round-trip form") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-8) == "1e-08");
  CHECK(format_double(-0.0) == "-0");
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int k = 0; k < 2000; ++k) {
    std::uint64_t raw = bits(gen);
    double v;
    std::memcpy(&v, &raw, sizeof v);
    if (!std::isfinite(v)) continue;
    const std::string text = format_double(v);
    CHECK(text.size() <= 24);
    CHECK(same_bits(parse_double(text), v));
  }
  CHECK_THROWS_AS(parse_double("1.5x"), UsageError);
  CHECK_THROWS_AS(parse_double(""), UsageError);
}

TEST_CASE("trace CSV round-trips bit-exactly") {
  const MethodPair pair = builtin_pair("rk3_rk4");
  for (const char* name : {"paper_exponential", "harmonic", "unit_slope"}) {
    CAPTURE(name);
    check_round_trip(integrate(pair, builtin_problem(name), {}));
  }
}

TEST_CASE("trace CSV layout") {
  const Trace trace = integrate(builtin_pair("rk3_rk4"), builtin_problem("unit_slope"), {});
  std::stringstream buf;
  write_trace_csv(buf, trace);
  std::string header, row;
  std::getline(buf, header);
  std::getline(buf, row);
  CHECK(header ==
        "i,x,h,rejects,w_lower,w_higher,eps_lower,beta_lower,delta_lower,delta_higher,"
        "alpha_term,cond_lhs,cond_rhs,cond_holds,bound,clamped");
  // No exact solution: oracle columns are empty.
  CHECK(row.find(",,") != std::string::npos);
  CHECK(std::count(row.begin(), row.end(), ',') == 15);

  std::stringstream wrong("a,b,c\n");
  CHECK_THROWS_AS(read_trace_csv(wrong), UsageError);
}

TEST_CASE("summary JSON schema") {
  const Trace trace =
      integrate(builtin_pair("rk3_rk4"), builtin_problem("paper_exponential"), {});
  const nlohmann::json j = summary_json(trace);
  CHECK(j.at("accepted").is_number_unsigned());
  CHECK(j.at("rejected").is_number_unsigned());
  CHECK(j.at("final_x").is_number_float());
  CHECK(j.at("final_delta_lower").is_number_float());
  CHECK(j.at("crossing_index").is_number_unsigned());
  CHECK(j.at("crossing_x").is_number_float());
  CHECK(j.contains("condition_violation_index"));
  CHECK(j.at("bound_coefficient").get<double>() == doctest::Approx(0.73728));
  CHECK(j.at("accepted").get<std::size_t>() == trace.records.size());
  CHECK(j.size() == 8);

  const Trace flat = integrate(builtin_pair("rk3_rk4"), builtin_problem("zero_field"), {});
  const nlohmann::json z = summary_json(flat);
  CHECK(z.at("crossing_index").is_null());
  CHECK(z.at("crossing_x").is_null());
  CHECK(z.at("final_delta_lower").get<double>() == 0.0);

  const Trace blind = integrate(builtin_pair("rk3_rk4"), builtin_problem("unit_slope"), {});
  CHECK(summary_json(blind).at("final_delta_lower").is_null());
}

TEST_CASE("figure series export") {
  const MethodPair pair = builtin_pair("rk3_rk4");
  {
    const Trace trace = integrate(pair, builtin_problem("zero_field"), {});
    std::stringstream buf;
    write_figure1_csv(buf, trace);
    std::string line;
    std::getline(buf, line);
    CHECK(line == "x,abs_eps_lower,abs_alpha_term");
    while (std::getline(buf, line)) CHECK(line.substr(line.find(',')) == ",0,0");
  }
  {
    ControllerConfig cfg;
    cfg.delta = 1e-8;
    const Trace trace = integrate(pair, builtin_problem("decay"), cfg);
    std::stringstream buf;
    write_figure1_csv(buf, trace);
    std::size_t rows = 0;
    std::string line;
    std::getline(buf, line);
    while (std::getline(buf, line)) ++rows;
    CHECK(rows == trace.records.size());
  }
  {
    const Trace trace = integrate(pair, builtin_problem("unit_slope"), {});
    std::stringstream buf;
    CHECK_THROWS_AS(write_figure1_csv(buf, trace), MissingDiagnostics);
  }
}
