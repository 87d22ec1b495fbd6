#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rklab/errors.hpp"
#include "rklab/problems.hpp"

using namespace rklab;

TEST_CASE("registry contains the required problems") {
  for (const auto& name : builtin_problem_names()) CHECK_NOTHROW(builtin_problem(name));
  CHECK_THROWS_AS(builtin_problem("lorenz"), UnknownProblem);

  const IVProblem exp = builtin_problem("paper_exponential");
  CHECK(exp.x0 == 0.0);
  CHECK(exp.x_end == 100.0);
  CHECK(exp.y0 == State{1.0});
  CHECK((*exp.exact)(100.0)[0] == doctest::Approx(1000.0).epsilon(1e-13));
  CHECK(exponential_rate() == std::log(1000.0) / 100.0);
  CHECK(exponential_rate() == doctest::Approx(0.0690775527898).epsilon(1e-12));

  CHECK((*builtin_problem("decay").exact)(0.0)[0] == 1.0);
  CHECK((*builtin_problem("riccati_simple").exact)(1.0)[0] == 0.5);
  CHECK_FALSE(builtin_problem("unit_slope").has_exact());
}

TEST_CASE("exact solutions satisfy their differential equations") {
  constexpr double kStep = 1e-6;
  for (const auto& name : builtin_problem_names()) {
    const IVProblem p = builtin_problem(name);
    if (!p.has_exact()) continue;
    CAPTURE(name);
    for (int k = 1; k <= 20; ++k) {
      const double x = p.x0 + (p.x_end - p.x0) * k / 21.0;
      const State up = (*p.exact)(x + kStep);
      const State down = (*p.exact)(x - kStep);
      const State y = (*p.exact)(x);
      const State slope = p.f(x, y);
      for (std::size_t j = 0; j < y.size(); ++j) {
        const double fd = (up[j] - down[j]) / (2.0 * kStep);
        const double scale = std::max(std::abs(slope[j]), 1e-3);
        CHECK(std::abs(fd - slope[j]) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("validate_problem invariants") {
  IVProblem p = builtin_problem("decay");
  p.x_end = p.x0;
  CHECK_THROWS_AS(validate_problem(p), InvalidProblem);

  IVProblem q = builtin_problem("decay");
  q.y0 = {1.0 + 1e-10};
  CHECK_THROWS_AS(validate_problem(q), InvalidProblem);
}

TEST_CASE("reference_solution uses the exact solution when present") {
  const IVProblem p = builtin_problem("paper_exponential");
  const double got = reference_solution(p, 50.0)[0];
  CHECK(got == (*p.exact)(50.0)[0]);
  CHECK(got == doctest::Approx(31.6227766016838).epsilon(1e-13));
  for (const auto& name : builtin_problem_names()) {
    const IVProblem q = builtin_problem(name);
    CHECK(reference_solution(q, q.x0) == q.y0);
  }
}

TEST_CASE("reference_solution falls back to step halving") {
  const IVProblem p = builtin_problem("unit_slope");
  CHECK(std::abs(reference_solution(p, 2.0, 1e-12)[0] - 2.0) <= 1e-12);

  IVProblem riccati = builtin_problem("riccati_simple");
  riccati.exact.reset();
  CHECK(std::abs(reference_solution(riccati, 3.0, 1e-12)[0] - 0.25) <= 1e-11);
}

TEST_CASE("reference_solution divergence and preconditions") {
  // A kink in f caps fixed-step convergence at order 1.5.
  IVProblem p = builtin_problem("unit_slope");
  p.f = [](double x, std::span<const double>) { return State{std::sqrt(std::abs(x - 0.3))}; };
  CHECK_THROWS_AS(reference_solution(p, 1.0, 1e-13, 4), OracleDivergence);

  const IVProblem q = builtin_problem("unit_slope");
  CHECK_THROWS_AS(reference_solution(q, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(reference_solution(q, 1.0, 1e-15), std::invalid_argument);
}
