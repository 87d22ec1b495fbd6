#include "rklab/rk_core.hpp"

#include <cmath>
#include <sstream>

#include "rklab/errors.hpp"

namespace rklab {

namespace {

std::string where(const ButcherTableau& t) {
  return t.name.empty() ? std::string("tableau") : "tableau '" + t.name + "'";
}

ButcherTableau make_builtin(std::string name, int m, std::vector<double> a,
                            std::vector<double> b, std::vector<double> c, int z) {
  return validate_tableau(
      ButcherTableau{std::move(name), m, std::move(a), std::move(b), std::move(c), z});
}

}  // namespace

ButcherTableau validate_tableau(ButcherTableau t, ValidationOptions opts) {
  if (t.m < 1)
    throw DimensionMismatch(where(t) + ": stage count must be positive");
  if (t.z < 1) throw DimensionMismatch(where(t) + ": order must be positive");
  const auto m = static_cast<std::size_t>(t.m);
  if (t.a.size() != m * m || t.b.size() != m || t.c.size() != m) {
    std::ostringstream msg;
    msg << where(t) << ": expected a " << m << "x" << m << ", b and c of length "
        << m << "; got |a|=" << t.a.size() << " |b|=" << t.b.size()
        << " |c|=" << t.c.size();
    throw DimensionMismatch(msg.str());
  }

  for (int p = 0; p < t.m; ++p) {
    for (int q = p; q < t.m; ++q) {
      if (t.coeff(p, q) != 0.0) {
        std::ostringstream msg;
        msg << where(t) << ": a[" << p + 1 << "][" << q + 1 << "] = " << t.coeff(p, q)
            << " makes the method implicit";
        throw ExplicitnessViolation(msg.str());
      }
    }
  }

  double weight_sum = 0.0;
  for (double bp : t.b) weight_sum += bp;
  if (std::abs(weight_sum - 1.0) > kTableauTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << where(t) << ": weights sum to " << weight_sum << ", not 1";
    throw ConsistencyViolation(msg.str());
  }

  if (!opts.allow_nonstandard_abscissae) {
    for (int p = 0; p < t.m; ++p) {
      double row = 0.0;
      for (int q = 0; q < t.m; ++q) row += t.coeff(p, q);
      if (std::abs(row - t.c[static_cast<std::size_t>(p)]) > kTableauTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << where(t) << ": c[" << p + 1 << "] = " << t.c[static_cast<std::size_t>(p)]
            << " but row " << p + 1 << " of a sums to " << row;
        throw ConsistencyViolation(msg.str());
      }
    }
  }
  return t;
}

State increment_function(const ButcherTableau& t, const Rhs& f, double x,
                         std::span<const double> y, double h) {
  const std::size_t n = y.size();
  const auto m = static_cast<std::size_t>(t.m);
  std::vector<State> k;
  k.reserve(m);
  State stage_y(n);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t q = 0; q < p; ++q) acc += t.a[p * m + q] * k[q][j];
      stage_y[j] = y[j] + h * acc;
    }
    State kp = f(x + t.c[p] * h, stage_y);
    if (kp.size() != n)
      throw DimensionMismatch("right-hand side returned a state of the wrong length");
    if (!all_finite(kp)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << where(t) << ": stage " << p + 1 << " is not finite at x = " << x + t.c[p] * h;
      throw NonFiniteStage(msg.str());
    }
    k.push_back(std::move(kp));
  }

  State slope(n, 0.0);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t j = 0; j < n; ++j) slope[j] += t.b[p] * k[p][j];
  return slope;
}

State rk_step(const ButcherTableau& t, const Rhs& f, double x,
              std::span<const double> y, double h) {
  State next = increment_function(t, f, x, y, h);
  for (std::size_t j = 0; j < next.size(); ++j) next[j] = y[j] + h * next[j];
  return next;
}

std::vector<double> stability_polynomial(const ButcherTableau& t) {
  // Explicit methods give a polynomial of degree <= m.
  const auto m = static_cast<std::size_t>(t.m);
  std::vector<double> coeffs(m + 1, 0.0);
  coeffs[0] = 1.0;
  std::vector<double> v(m, 1.0);  // A^{k-1} 1
  for (std::size_t k = 1; k <= m; ++k) {
    double s = 0.0;
    for (std::size_t p = 0; p < m; ++p) s += t.b[p] * v[p];
    coeffs[k] = s;
    std::vector<double> next(m, 0.0);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q) next[p] += t.a[p * m + q] * v[q];
    v = std::move(next);
  }
  return coeffs;
}

const ButcherTableau& forward_euler() {
  static const ButcherTableau t = make_builtin("euler", 1, {0.0}, {1.0}, {0.0}, 1);
  return t;
}

const ButcherTableau& explicit_midpoint() {
  static const ButcherTableau t = make_builtin("midpoint", 2,
                                               {0.0, 0.0,
                                                0.5, 0.0},
                                               {0.0, 1.0}, {0.0, 0.5}, 2);
  return t;
}

const ButcherTableau& heun2() {
  static const ButcherTableau t = make_builtin("heun2", 2,
                                               {0.0, 0.0,
                                                1.0, 0.0},
                                               {0.5, 0.5}, {0.0, 1.0}, 2);
  return t;
}

// Kutta's third-order method.
const ButcherTableau& kutta3() {
  static const ButcherTableau t = make_builtin("kutta3", 3,
                                               {0.0, 0.0, 0.0,
                                                0.5, 0.0, 0.0,
                                                -1.0, 2.0, 0.0},
                                               {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
                                               {0.0, 0.5, 1.0}, 3);
  return t;
}

const ButcherTableau& classic_rk4() {
  static const ButcherTableau t = make_builtin("rk4", 4,
                                               {0.0, 0.0, 0.0, 0.0,
                                                0.5, 0.0, 0.0, 0.0,
                                                0.0, 0.5, 0.0, 0.0,
                                                0.0, 0.0, 1.0, 0.0},
                                               {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
                                               {0.0, 0.5, 0.5, 1.0}, 4);
  return t;
}

const ButcherTableau& rk4_three_eighths() {
  static const ButcherTableau t = make_builtin("rk4_38", 4,
                                               {0.0, 0.0, 0.0, 0.0,
                                                1.0 / 3.0, 0.0, 0.0, 0.0,
                                                -1.0 / 3.0, 1.0, 0.0, 0.0,
                                                1.0, -1.0, 1.0, 0.0},
                                               {1.0 / 8.0, 3.0 / 8.0, 3.0 / 8.0, 1.0 / 8.0},
                                               {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}, 4);
  return t;
}

std::vector<std::string> builtin_tableau_names() {
  return {"euler", "midpoint", "heun2", "kutta3", "rk4", "rk4_38"};
}

const ButcherTableau& builtin_tableau(std::string_view name) {
  if (name == "euler") return forward_euler();
  if (name == "midpoint") return explicit_midpoint();
  if (name == "heun2") return heun2();
  if (name == "kutta3") return kutta3();
  if (name == "rk4") return classic_rk4();
  if (name == "rk4_38") return rk4_three_eighths();
  throw UnknownName("unknown tableau '" + std::string(name) + "'");
}

MethodPair::MethodPair(std::string name, ButcherTableau lower, ButcherTableau higher,
                       ValidationOptions opts)
    : name_(std::move(name)),
      lower_(validate_tableau(std::move(lower), opts)),
      higher_(validate_tableau(std::move(higher), opts)) {
  if (higher_.z <= lower_.z) {
    std::ostringstream msg;
    msg << "pair '" << name_ << "': higher method order " << higher_.z
        << " must exceed lower method order " << lower_.z;
    throw InvalidPair(msg.str());
  }
}

std::vector<std::string> builtin_pair_names() {
  return {"euler_heun", "heun_kutta3", "rk3_rk4", "rk2_rk4"};
}

MethodPair builtin_pair(std::string_view name, ValidationOptions opts) {
  if (name == "euler_heun") return {"euler_heun", forward_euler(), heun2(), opts};
  if (name == "heun_kutta3") return {"heun_kutta3", heun2(), kutta3(), opts};
  if (name == "rk3_rk4") return {"rk3_rk4", kutta3(), classic_rk4(), opts};
  if (name == "rk2_rk4") return {"rk2_rk4", explicit_midpoint(), classic_rk4(), opts};
  throw UnknownName("unknown method pair '" + std::string(name) + "'");
}

}  // namespace rklab
