#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rklab/state.hpp"

namespace rklab {

using ExactSolution = std::function<State(double x)>;

// Initial-value problem y' = f(x, y), y(x0) = y0 on [x0, x_end].
struct IVProblem {
  std::string name;
  Rhs f;
  double x0 = 0.0;
  State y0;
  double x_end = 0.0;
  std::optional<ExactSolution> exact;

  bool has_exact() const { return exact.has_value(); }
};

// Checks x_end > x0 and that exact(x0) reproduces y0; throws InvalidProblem.
IVProblem validate_problem(IVProblem p);

// Growth rate of the `paper_exponential` problem, ln(1000)/100.
double exponential_rate();

// Registry keys:
//   paper_exponential  y' = (ln 1000/100) y, y(0) = 1 on [0, 100]
//   decay              y' = -y,  y(0) = 1 on [0, 10]
//   riccati_simple     y' = -y^2, y(0) = 1 on [0, 5]
//   zero_field         y' = 0,   y(0) = 1 on [0, 1]
//   harmonic           y1' = y2, y2' = -y1, y(0) = (1, 0) on [0, 10]
//   unit_slope         y' = 1,   y(0) = 0 on [0, 2], no exact solution
std::vector<std::string> builtin_problem_names();
// Throws UnknownProblem.
IVProblem builtin_problem(std::string_view name);

inline constexpr double kMinOracleTolerance = 1e-13;
inline constexpr int kMaxOracleHalvings = 24;

// y(x) for x in [x0, x_end]. Uses the exact solution when registered,
// otherwise fixed-step classic RK4 refined by step halving until successive
// results differ by at most `tol` (infinity norm). Throws OracleDivergence
// after `max_halvings` unsuccessful refinements.
State reference_solution(const IVProblem& p, double x, double tol = kMinOracleTolerance,
                         int max_halvings = kMaxOracleHalvings);

}  // namespace rklab
