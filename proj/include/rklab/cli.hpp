#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rklab/controller.hpp"

namespace rklab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnknownName = 3;
inline constexpr int kExitIntegrator = 4;
inline constexpr int kExitIo = 5;

struct RunSpec {
  std::string problem = "paper_exponential";
  std::string pair = "rk3_rk4";
  double delta = 1e-8;
  double sigma = 0.8;
  StepPolicy policy = StepPolicy::proportional;
  std::optional<double> h_init;
  std::optional<double> x_end;
  std::optional<std::size_t> max_steps;
  std::optional<std::string> csv_path;
  std::optional<std::string> json_path;
  std::optional<std::string> figure1_path;
  bool quiet = false;
  bool allow_nonstandard_abscissae = false;
};

// Thrown by parse_args for --help.
struct HelpRequested {
  std::string text;
};

// args excludes the program name. Throws UsageError for malformed or
// out-of-range values and UnknownName for unregistered problem/pair/policy.
RunSpec parse_args(const std::vector<std::string>& args);

// Integrates, writes the requested files and prints a one-line verdict on
// `out`. Returns an exit code; diagnostics go to `err`.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

// Full command-line entry point: parse_args + run with exit-code mapping.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rklab
