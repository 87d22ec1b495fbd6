#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rklab/error_analysis.hpp"
#include "rklab/problems.hpp"
#include "rklab/rk_core.hpp"

namespace rklab {

enum class StepPolicy {
  // Recompute h from the error estimate after every accepted step.
  proportional,
  // Shrink h on rejection only; accepted steps keep the current h.
  reject_only,
};

std::string_view to_string(StepPolicy policy);
// Accepts "proportional" and "reject-only"; throws UnknownName.
StepPolicy parse_policy(std::string_view name);

// Absolute local error control settings. Unset stepsize limits are filled
// from the integration interval by resolve_config.
struct ControllerConfig {
  double delta = 1e-8;
  double sigma = 0.8;
  std::optional<double> h_init;
  std::optional<double> h_min;
  std::optional<double> h_max;
  StepPolicy policy = StepPolicy::proportional;
  std::size_t max_steps = 1'000'000;
  std::size_t max_rejects = 20;
};

// Fills h_min = 1e-12 L, h_max = L / 10 (L = x_end - x0) and, when h_init
// is unset, probes one step of length L / 100 at (x0, y0) and proposes h
// from its error estimate. Throws InvalidConfig on inconsistent settings.
ControllerConfig resolve_config(const ControllerConfig& cfg, const MethodPair& pair,
                                const IVProblem& p);

struct TraceSummary {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double final_x = 0.0;
  std::optional<State> final_delta_lower;
  std::optional<Crossing> crossing;
  std::optional<std::size_t> condition_violation_index;
  double bound_coefficient = 0.0;
};

struct Trace {
  std::vector<StepRecord> records;
  TraceSummary summary;
  ControllerConfig config;  // resolved
};

// clamp(sigma * (delta / beta_norm)^{1/(z+1)}, h_min, h_max); h_max when
// beta_norm is zero. cfg must be resolved.
double propose_stepsize(double beta_norm, const ControllerConfig& cfg, int z);

struct StepAttempt {
  State w_lower;
  State w_higher;
  State beta;
};

// Advances the same input with both methods of the pair and estimates the
// lower method's error coefficient from their difference.
StepAttempt attempt_step(const MethodPair& pair, const Rhs& f, double x,
                         std::span<const double> w_in, double h);

// Adaptive integration over [x0, x_end] with local extrapolation: the
// higher-order result is carried forward, the lower-order one is what the
// tolerance controls. Steps are accepted when |beta| h^{z+1} < delta.
Trace integrate(const MethodPair& pair, const IVProblem& p, const ControllerConfig& cfg);

}  // namespace rklab
