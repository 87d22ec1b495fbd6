#include "rklab/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rklab/errors.hpp"

namespace rklab {

BetaTracker BetaTracker::with_sample(double beta) const {
  BetaTracker next = *this;
  next.count = count + 1;
  next.mean_abs = mean_abs + (std::abs(beta) - mean_abs) / static_cast<double>(next.count);
  next.last = beta;
  return next;
}

State local_error_exact(const ButcherTableau& t, const IVProblem& p, double x, double h) {
  const State y = reference_solution(p, x);
  const State y_next = reference_solution(p, x + h);
  State eps = rk_step(t, p.f, x, y, h);
  for (std::size_t k = 0; k < eps.size(); ++k) eps[k] -= y_next[k];
  return eps;
}

State estimate_beta(std::span<const double> w_lower, std::span<const double> w_higher,
                    double h, int z) {
  if (!(h > 0.0)) throw std::invalid_argument("estimate_beta: h must be positive");
  const double scale = std::pow(h, z + 1);
  if (scale == 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "h^" << z + 1 << " underflows to zero for h = " << h;
    throw StepUnderflow(msg.str());
  }
  State beta(w_lower.size());
  for (std::size_t k = 0; k < beta.size(); ++k) beta[k] = (w_lower[k] - w_higher[k]) / scale;
  return beta;
}

State alpha_propagation_term(const ButcherTableau& t_lower, const Rhs& f, double x,
                             std::span<const double> y_exact,
                             std::span<const double> w_higher, double h) {
  const State at_numeric = increment_function(t_lower, f, x, w_higher, h);
  const State at_exact = increment_function(t_lower, f, x, y_exact, h);
  State term(y_exact.size());
  for (std::size_t k = 0; k < term.size(); ++k)
    term[k] = (w_higher[k] - y_exact[k]) + h * (at_numeric[k] - at_exact[k]);
  return term;
}

BetaTracker mean_beta_higher(const BetaTracker& tracker, const ButcherTableau& t_higher,
                             const IVProblem& p, double x, double h) {
  const State eps = local_error_exact(t_higher, p, x, h);
  return tracker.with_sample(dominant(eps) / std::pow(h, t_higher.z + 1));
}

ConditionCheck condition_check(std::size_t i, double beta_lower, const BetaTracker& tracker,
                               double h, int z) {
  ConditionCheck out;
  out.lhs = std::abs(beta_lower) * std::pow(h, z + 1);
  const double per_step = tracker.mean_abs * std::pow(h, z + 2);
  out.rhs = static_cast<double>(i) * per_step;
  out.holds = out.lhs > out.rhs;
  out.m_ratio = per_step > 0.0 ? out.lhs / per_step : std::numeric_limits<double>::infinity();
  return out;
}

double sigma_bound_coefficient(double sigma, int z, int r) {
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw std::invalid_argument("sigma_bound: safety factor must lie in (0, 1]");
  if (z < 1 || r < 1) throw std::invalid_argument("sigma_bound: z and r must be >= 1");
  return std::pow(sigma, z + 1) + std::pow(sigma, z + r + 1);
}

double sigma_bound(double sigma, int z, int r, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("sigma_bound: delta must be positive");
  return sigma_bound_coefficient(sigma, z, r) * delta;
}

std::optional<Crossing> find_crossing(std::span<const StepRecord> records, double delta) {
  for (std::size_t pos = 0; pos < records.size(); ++pos) {
    const auto& rec = records[pos];
    if (rec.delta_lower && inf_norm(*rec.delta_lower) > delta)
      return Crossing{pos, rec.i, rec.x};
  }
  return std::nullopt;
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  return sxy / sxx;
}

double empirical_order(const ButcherTableau& t, const IVProblem& p, OrderMode mode,
                       std::span<const double> h_set) {
  if (h_set.size() < 4)
    throw std::invalid_argument("empirical_order: need at least four stepsizes");
  if (std::set<double>(h_set.begin(), h_set.end()).size() != h_set.size())
    throw std::invalid_argument("empirical_order: stepsizes must be distinct");

  constexpr double kUlp = std::numeric_limits<double>::epsilon();
  std::vector<double> log_h, log_err;
  for (double h : h_set) {
    if (!(h > 0.0)) throw std::invalid_argument("empirical_order: stepsizes must be positive");
    double used_h = h;
    State err;
    State reference;
    if (mode == OrderMode::local) {
      err = local_error_exact(t, p, p.x0, h);
      reference = reference_solution(p, p.x0 + h);
    } else {
      const double span = p.x_end - p.x0;
      const auto steps = std::max<long>(1, std::lround(span / h));
      used_h = span / static_cast<double>(steps);
      State y = p.y0;
      for (long k = 0; k < steps; ++k)
        y = rk_step(t, p.f, p.x0 + static_cast<double>(k) * used_h, y, used_h);
      reference = reference_solution(p, p.x_end);
      err = difference(y, reference);
    }
    const double magnitude = inf_norm(err);
    const double floor = 1e2 * kUlp * std::max(1.0, inf_norm(reference));
    if (!(magnitude >= floor)) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "error " << magnitude << " at h = " << h << " is within 100 ulp of roundoff";
      throw DegenerateFit(msg.str());
    }
    log_h.push_back(std::log(used_h));
    log_err.push_back(std::log(magnitude));
  }
  return least_squares_slope(log_h, log_err);
}

}  // namespace rklab
