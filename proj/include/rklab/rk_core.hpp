#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rklab/state.hpp"

namespace rklab {

// Explicit Runge-Kutta method in Butcher form. `a` is stored row-major as an
// m x m matrix; only the strictly lower triangle may be nonzero.
struct ButcherTableau {
  std::string name;
  int m = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  int z = 0;  // classical order

  double coeff(int p, int q) const { return a[static_cast<std::size_t>(p * m + q)]; }
};

struct ValidationOptions {
  // Skip the c_p == sum_q a_pq row-sum check.
  bool allow_nonstandard_abscissae = false;
};

inline constexpr double kTableauTolerance = 1e-12;

// Returns t unchanged when it is a well-formed explicit tableau; throws
// DimensionMismatch, ExplicitnessViolation or ConsistencyViolation otherwise.
ButcherTableau validate_tableau(ButcherTableau t, ValidationOptions opts = {});

// F(x, y; h) = sum_p b_p k_p with the stages evaluated in ascending order.
// Throws NonFiniteStage if any stage is NaN or infinite.
State increment_function(const ButcherTableau& t, const Rhs& f, double x,
                         std::span<const double> y, double h);

// y + h * F(x, y; h).
State rk_step(const ButcherTableau& t, const Rhs& f, double x,
              std::span<const double> y, double h);

// Stability polynomial coefficients: rk_step on y' = lambda*y equals
// y * sum_k coeffs[k] * (lambda*h)^k. Uses b^T A^{k-1} 1 for k >= 1.
std::vector<double> stability_polynomial(const ButcherTableau& t);

// Built-in tableaus, all validated.
const ButcherTableau& forward_euler();
const ButcherTableau& explicit_midpoint();
const ButcherTableau& heun2();
const ButcherTableau& kutta3();
const ButcherTableau& classic_rk4();
const ButcherTableau& rk4_three_eighths();

std::vector<std::string> builtin_tableau_names();
const ButcherTableau& builtin_tableau(std::string_view name);

// A lower-order method paired with a strictly higher-order one for local
// extrapolation. The two methods never share stages.
class MethodPair {
 public:
  MethodPair(std::string name, ButcherTableau lower, ButcherTableau higher,
             ValidationOptions opts = {});

  const std::string& name() const { return name_; }
  const ButcherTableau& lower() const { return lower_; }
  const ButcherTableau& higher() const { return higher_; }
  int z() const { return lower_.z; }
  int r() const { return higher_.z - lower_.z; }

 private:
  std::string name_;
  ButcherTableau lower_;
  ButcherTableau higher_;
};

// Registry keys: "euler_heun", "heun_kutta3", "rk3_rk4", "rk2_rk4".
std::vector<std::string> builtin_pair_names();
// Throws UnknownName for unregistered keys.
MethodPair builtin_pair(std::string_view name, ValidationOptions opts = {});

}  // namespace rklab
