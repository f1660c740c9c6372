#pragma once

#include <string>
#include <vector>

#include "arcqp/qp_core.hpp"

namespace arcqp {

enum class SolveStatus {
  converged,
  max_iter_reached,
  mu_below_sigma,
  numerical_failure,
};

std::string to_string(SolveStatus s);

struct IterationRecord {
  int k = 0;                ///< 1-based iteration index
  double mu = 0.0;          ///< duality gap after the iteration
  double sin_alpha = 0.0;   ///< arc step actually taken
  double kappa = 0.0;       ///< termination measure after the iteration
  double r_norm_x = 0.0;
  double r_norm_y = 0.0;
  double r_norm_z = 0.0;
  double proximity_before = 0.0;  ///< at the arc point, before correction
  double proximity_after = 0.0;   ///< after the corrector step
};

struct SolveReport {
  SolveStatus status = SolveStatus::numerical_failure;
  Iterate final;
  std::vector<IterationRecord> iterations;
  double objective = 0.0;  ///< 1/2 x'Hx + c'x at the final x
  std::string message;     ///< diagnostic on numerical_failure
};

/// Fixed-step mode: sin(alpha) = theta / sqrt(n) every iteration, corrector
/// after each arc step, terminating when mu <= opts.eps. Every iterate stays
/// in the theta-neighborhood and the gap contracts at least by
/// (1 - 0.0185 / sqrt(n)) per iteration at theta = 0.19.
SolveReport solve_theoretical(const BoxQP& qp, const SolverOptions& opts);

/// Adaptive mode: per-iteration step from select_step, terminating when the
/// composite measure kappa <= opts.eps. Stops with mu_below_sigma when the
/// gap falls under opts.sigma before kappa converges.
SolveReport solve_practical(const BoxQP& qp, const SolverOptions& opts);

/// Dispatch on opts.mode.
SolveReport solve(const BoxQP& qp, const SolverOptions& opts);

/// Standalone KKT test for a primal point: reconstructs the bound
/// multipliers from g = Hx + c by active-set sign assignment and returns
/// true when the worst per-coordinate stationarity/complementarity residual
/// is within tol and x is inside the box within tol.
bool check_optimality(const BoxQP& qp, const Vector& x, double tol);

}  // namespace arcqp
