#include "rklab/controller.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rklab/errors.hpp"

namespace rklab {

std::string_view to_string(StepPolicy policy) {
  switch (policy) {
    case StepPolicy::proportional:
      return "proportional";
    case StepPolicy::reject_only:
      return "reject-only";
  }
  return "proportional";
}

StepPolicy parse_policy(std::string_view name) {
  if (name == "proportional") return StepPolicy::proportional;
  if (name == "reject-only") return StepPolicy::reject_only;
  throw UnknownName("unknown step policy '" + std::string(name) + "'");
}

double propose_stepsize(double beta_norm, const ControllerConfig& cfg, int z) {
  if (!cfg.h_min || !cfg.h_max)
    throw InvalidConfig("propose_stepsize: stepsize limits are not resolved");
  if (beta_norm == 0.0) return *cfg.h_max;
  const double h = cfg.sigma * std::pow(cfg.delta / beta_norm, 1.0 / (z + 1));
  return std::clamp(h, *cfg.h_min, *cfg.h_max);
}

StepAttempt attempt_step(const MethodPair& pair, const Rhs& f, double x,
                         std::span<const double> w_in, double h) {
  StepAttempt out;
  out.w_lower = rk_step(pair.lower(), f, x, w_in, h);
  out.w_higher = rk_step(pair.higher(), f, x, w_in, h);
  out.beta = estimate_beta(out.w_lower, out.w_higher, h, pair.z());
  return out;
}

ControllerConfig resolve_config(const ControllerConfig& cfg, const MethodPair& pair,
                                const IVProblem& p) {
  ControllerConfig out = cfg;
  const double span = p.x_end - p.x0;
  if (!(span > 0.0)) throw InvalidConfig("integration interval is empty");
  if (!(cfg.delta > 0.0)) throw InvalidConfig("tolerance delta must be positive");
  if (!(cfg.sigma > 0.0 && cfg.sigma <= 1.0))
    throw InvalidConfig("safety factor sigma must lie in (0, 1]");
  if (cfg.max_steps < 1) throw InvalidConfig("max_steps must be at least 1");
  if (cfg.max_rejects < 1) throw InvalidConfig("max_rejects must be at least 1");
  if (!out.h_min) out.h_min = 1e-12 * span;
  if (!out.h_max) out.h_max = span / 10.0;
  if (!(*out.h_min > 0.0 && *out.h_min <= *out.h_max))
    throw InvalidConfig("stepsize limits must satisfy 0 < h_min <= h_max");

  if (!out.h_init) {
    const StepAttempt probe = attempt_step(pair, p.f, p.x0, p.y0, span / 100.0);
    out.h_init = propose_stepsize(inf_norm(probe.beta), out, pair.z());
  }
  if (!(*out.h_init >= *out.h_min && *out.h_init <= *out.h_max))
    throw InvalidConfig("initial stepsize must lie in [h_min, h_max]");
  return out;
}

namespace {

void require_finite(const StepAttempt& a, double x) {
  if (!all_finite(a.w_lower) || !all_finite(a.w_higher)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "non-finite solution produced by the step from x = " << x;
    throw NonFiniteState(msg.str());
  }
}

}  // namespace

Trace integrate(const MethodPair& pair, const IVProblem& p, const ControllerConfig& cfg) {
  Trace trace;
  trace.config = resolve_config(cfg, pair, p);
  const ControllerConfig& c = trace.config;
  const int z = pair.z();
  const double h_min = *c.h_min;
  const double h_max = *c.h_max;
  const double bound = sigma_bound(c.sigma, z, pair.r(), c.delta);

  double x = p.x0;
  State w = p.y0;
  double h = *c.h_init;
  BetaTracker tracker;
  std::size_t total_rejects = 0;

  while (x < p.x_end) {
    if (trace.records.size() >= c.max_steps) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "reached " << c.max_steps << " accepted steps at x = " << x;
      throw MaxStepsExceeded(msg.str());
    }

    std::size_t rejects = 0;
    double step = h;
    bool clamped = false;
    StepAttempt attempt;
    double beta_norm = 0.0;
    for (;;) {
      step = h;
      clamped = false;
      // Land on x_end exactly, and never leave a remainder shorter than h_min.
      if (x + step > p.x_end || p.x_end - (x + step) < h_min) {
        step = p.x_end - x;
        clamped = step != h;
      }
      attempt = attempt_step(pair, p.f, x, w, step);
      require_finite(attempt, x);
      beta_norm = inf_norm(attempt.beta);
      if (beta_norm * std::pow(step, z + 1) < c.delta) break;

      ++rejects;
      if (rejects > c.max_rejects) {
        std::ostringstream msg;
        msg.precision(17);
        msg << rejects << " consecutive rejections at x = " << x;
        throw MaxRejectsExceeded(msg.str());
      }
      const double wanted = c.sigma * std::pow(c.delta / beta_norm, 1.0 / (z + 1));
      if (wanted < h_min) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "required stepsize " << wanted << " at x = " << x << " is below h_min = "
            << h_min;
        throw StepsizeUnderflow(msg.str());
      }
      h = std::min(wanted, h_max);
    }
    total_rejects += rejects;

    const double x_next = clamped || step == p.x_end - x ? p.x_end : x + step;
    StepRecord rec;
    rec.i = trace.records.size() + 1;
    rec.x = x_next;
    rec.h = step;
    rec.rejects = rejects;
    rec.w_lower = attempt.w_lower;
    rec.w_higher = attempt.w_higher;
    rec.beta_lower = attempt.beta;
    rec.cond_lhs = beta_norm * std::pow(step, z + 1);
    rec.bound = bound;
    rec.clamped = clamped;

    if (p.exact) {
      const State y = (*p.exact)(x);
      const State y_next = (*p.exact)(x_next);
      State eps = rk_step(pair.lower(), p.f, x, y, step);
      for (std::size_t k = 0; k < eps.size(); ++k) eps[k] -= y_next[k];
      rec.eps_lower = std::move(eps);
      rec.delta_lower = difference(attempt.w_lower, y_next);
      rec.delta_higher = difference(attempt.w_higher, y_next);
      rec.alpha_term = alpha_propagation_term(pair.lower(), p.f, x, y, w, step);
      State eps_higher = rk_step(pair.higher(), p.f, x, y, step);
      for (std::size_t k = 0; k < eps_higher.size(); ++k) eps_higher[k] -= y_next[k];
      tracker = tracker.with_sample(dominant(eps_higher) /
                                    std::pow(step, pair.higher().z + 1));
      const ConditionCheck check = condition_check(rec.i, beta_norm, tracker, step, z);
      rec.cond_rhs = check.rhs;
      rec.cond_holds = check.holds;
      if (!check.holds && !trace.summary.condition_violation_index)
        trace.summary.condition_violation_index = rec.i;
    }

    x = x_next;
    w = attempt.w_higher;
    trace.records.push_back(std::move(rec));
    if (c.policy == StepPolicy::proportional) h = propose_stepsize(beta_norm, c, z);
  }

  TraceSummary& s = trace.summary;
  s.accepted = trace.records.size();
  s.rejected = total_rejects;
  s.final_x = x;
  s.final_delta_lower = trace.records.back().delta_lower;
  s.crossing = find_crossing(trace.records, c.delta);
  s.bound_coefficient = sigma_bound_coefficient(c.sigma, z, pair.r());
  return trace;
}

}  // namespace rklab
