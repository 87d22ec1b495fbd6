#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rklab/problems.hpp"
#include "rklab/rk_core.hpp"
#include "rklab/state.hpp"

namespace rklab {

// Diagnostic row for one accepted step from x_{i-1} to x_i. Fields that need
// the exact solution are empty when the problem has none.
struct StepRecord {
  std::size_t i = 0;
  double x = 0.0;
  double h = 0.0;
  std::size_t rejects = 0;
  State w_lower;   // lower-order result launched from the propagated state
  State w_higher;  // higher-order result, propagated to the next step
  State beta_lower;  // (w_lower - w_higher) / h^{z+1}
  std::optional<State> eps_lower;     // local error of the lower method from exact input
  std::optional<State> delta_lower;   // w_lower - y(x)
  std::optional<State> delta_higher;  // w_higher - y(x)
  std::optional<State> alpha_term;    // propagated higher-order error through one lower step
  double cond_lhs = 0.0;              // |beta_lower| h^{z+1}
  std::optional<double> cond_rhs;     // i |mean beta_higher| h^{z+2}
  std::optional<bool> cond_holds;
  double bound = 0.0;  // (sigma^{z+1} + sigma^{z+r+1}) delta
  bool clamped = false;
};

// Running mean of |beta| of the higher-order method.
struct BetaTracker {
  std::size_t count = 0;
  double mean_abs = 0.0;
  double last = 0.0;

  // New tracker with one more sample.
  [[nodiscard]] BetaTracker with_sample(double beta) const;
};

// [y(x) + h F(x, y(x))] - y(x + h), y from reference_solution.
State local_error_exact(const ButcherTableau& t, const IVProblem& p, double x, double h);

// (w_lower - w_higher) / h^{z+1}, componentwise. Throws StepUnderflow if
// h^{z+1} is zero.
State estimate_beta(std::span<const double> w_lower, std::span<const double> w_higher,
                    double h, int z);

// Global error of the higher-order input carried through one step of the
// lower method: d + h [F(x, y_exact + d) - F(x, y_exact)], d = w_higher - y_exact.
// This is alpha * Delta by the mean-value theorem, without forming F_y.
State alpha_propagation_term(const ButcherTableau& t_lower, const Rhs& f, double x,
                             std::span<const double> y_exact,
                             std::span<const double> w_higher, double h);

// Samples beta of the higher method at (x, h) from exact input and folds
// its magnitude into the running mean.
BetaTracker mean_beta_higher(const BetaTracker& tracker, const ButcherTableau& t_higher,
                             const IVProblem& p, double x, double h);

struct ConditionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double m_ratio = 0.0;  // +inf when the mean is zero
};

// Breakdown condition |beta_z| h^{z+1} > i |mean beta_{z+1}| h^{z+2}.
ConditionCheck condition_check(std::size_t i, double beta_lower, const BetaTracker& tracker,
                               double h, int z);

// Coefficient sigma^{z+1} + sigma^{z+r+1}.
double sigma_bound_coefficient(double sigma, int z, int r);
// (sigma^{z+1} + sigma^{z+r+1}) * delta.
double sigma_bound(double sigma, int z, int r, double delta);

struct Crossing {
  std::size_t position = 0;  // offset into the record sequence
  std::size_t index = 0;     // record's step index i
  double x = 0.0;
};

// First record whose |delta_lower| (infinity norm) strictly exceeds delta.
// Records without delta_lower never cross.
std::optional<Crossing> find_crossing(std::span<const StepRecord> records, double delta);

enum class OrderMode { local, global };

// Least-squares slope of log(error) against log(h). Local mode measures one
// step from (x0, y0); global mode integrates with fixed steps to x_end.
// Throws DegenerateFit when an error is within 100 ulp of roundoff.
double empirical_order(const ButcherTableau& t, const IVProblem& p, OrderMode mode,
                       std::span<const double> h_set);

// Slope of the least-squares line through (xs, ys).
double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace rklab
