#include "rklab/problems.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rklab/errors.hpp"
#include "rklab/rk_core.hpp"

namespace rklab {

IVProblem validate_problem(IVProblem p) {
  if (!(p.x_end > p.x0))
    throw InvalidProblem("problem '" + p.name + "': x_end must exceed x0");
  if (p.y0.empty()) throw InvalidProblem("problem '" + p.name + "': empty initial state");
  if (p.exact) {
    const State at_start = (*p.exact)(p.x0);
    if (at_start.size() != p.y0.size())
      throw InvalidProblem("problem '" + p.name + "': exact solution has the wrong length");
    for (std::size_t k = 0; k < p.y0.size(); ++k) {
      if (std::abs(at_start[k] - p.y0[k]) > 1e-14 * (1.0 + std::abs(p.y0[k])))
        throw InvalidProblem("problem '" + p.name + "': exact(x0) does not match y0");
    }
  }
  return p;
}

double exponential_rate() {
  static const double rate = std::log(1000.0) / 100.0;
  return rate;
}

std::vector<std::string> builtin_problem_names() {
  return {"paper_exponential", "decay", "riccati_simple", "zero_field", "harmonic",
          "unit_slope"};
}

IVProblem builtin_problem(std::string_view name) {
  IVProblem p;
  p.name = std::string(name);
  if (name == "paper_exponential") {
    const double rate = exponential_rate();
    p.f = [rate](double, std::span<const double> y) { return State{rate * y[0]}; };
    p.x0 = 0.0;
    p.y0 = {1.0};
    p.x_end = 100.0;
    p.exact = [rate](double x) { return State{std::exp(rate * x)}; };
  } else if (name == "decay") {
    p.f = [](double, std::span<const double> y) { return State{-y[0]}; };
    p.x0 = 0.0;
    p.y0 = {1.0};
    p.x_end = 10.0;
    p.exact = [](double x) { return State{std::exp(-x)}; };
  } else if (name == "riccati_simple") {
    p.f = [](double, std::span<const double> y) { return State{-y[0] * y[0]}; };
    p.x0 = 0.0;
    p.y0 = {1.0};
    p.x_end = 5.0;
    p.exact = [](double x) { return State{1.0 / (1.0 + x)}; };
  } else if (name == "zero_field") {
    p.f = [](double, std::span<const double> y) { return State(y.size(), 0.0); };
    p.x0 = 0.0;
    p.y0 = {1.0};
    p.x_end = 1.0;
    p.exact = [](double) { return State{1.0}; };
  } else if (name == "harmonic") {
    p.f = [](double, std::span<const double> y) { return State{y[1], -y[0]}; };
    p.x0 = 0.0;
    p.y0 = {1.0, 0.0};
    p.x_end = 10.0;
    p.exact = [](double x) { return State{std::cos(x), -std::sin(x)}; };
  } else if (name == "unit_slope") {
    p.f = [](double, std::span<const double> y) { return State(y.size(), 1.0); };
    p.x0 = 0.0;
    p.y0 = {0.0};
    p.x_end = 2.0;
  } else {
    throw UnknownProblem("unknown problem '" + std::string(name) + "'");
  }
  return validate_problem(std::move(p));
}

namespace {

State fixed_step_rk4(const IVProblem& p, double x, long steps) {
  const double h = (x - p.x0) / static_cast<double>(steps);
  State y = p.y0;
  for (long k = 0; k < steps; ++k)
    y = rk_step(classic_rk4(), p.f, p.x0 + static_cast<double>(k) * h, y, h);
  return y;
}

}  // namespace

State reference_solution(const IVProblem& p, double x, double tol, int max_halvings) {
  if (!(x >= p.x0 && x <= p.x_end))
    throw std::invalid_argument("reference_solution: x outside [x0, x_end]");
  if (!(tol >= kMinOracleTolerance))
    throw std::invalid_argument("reference_solution: tolerance below 1e-13");
  if (p.exact) return (*p.exact)(x);
  if (x == p.x0) return p.y0;

  long steps = 16;
  State coarse = fixed_step_rk4(p, x, steps);
  for (int halving = 1; halving <= max_halvings; ++halving) {
    steps *= 2;
    State fine = fixed_step_rk4(p, x, steps);
    if (inf_norm(difference(fine, coarse)) <= tol) return fine;
    coarse = std::move(fine);
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "reference solution for '" << p.name << "' at x = " << x
      << " did not converge to " << tol << " within " << max_halvings << " halvings";
  throw OracleDivergence(msg.str());
}

}  // namespace rklab
