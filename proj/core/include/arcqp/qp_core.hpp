#pragma once

#include <Eigen/Dense>

namespace arcqp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Convex quadratic program over the unit box,
///
///   min 1/2 x'Hx + c'x   subject to  -e <= x <= e,
///
/// with H symmetric positive definite. Callers with general bounds
/// l <= x <= u are expected to rescale onto the unit box first.
struct BoxQP {
  Index n = 0;  ///< problem dimension
  Matrix H;     ///< n x n, symmetric positive definite
  Vector c;     ///< n
};

/// Validates dimensions, symmetry (max |H_ij - H_ji| <= 1e-12) and positive
/// definiteness (Cholesky must succeed), then returns the problem.
/// Throws std::invalid_argument with a diagnostic naming the offending
/// entries otherwise.
BoxQP make_box_qp(Matrix H, Vector c);

/// Primal-dual iterate. y and z are the slacks of the upper and lower
/// bounds, lambda and gamma the corresponding multipliers:
///
///   y = e - x,  z = e + x,  (y, z, lambda, gamma) > 0.
///
/// y and z are stored explicitly (the corrector and arc updates move them
/// independently), so the identities x + y = e, x - z = -e are observable
/// invariants rather than enforced by construction.
struct Iterate {
  Vector x;
  Vector y;
  Vector z;
  Vector lambda;
  Vector gamma;
  double mu = 0.0;  ///< duality gap (lambda'y + gamma'z) / 2n
};

enum class SolveMode { theoretical, practical };

struct SolverOptions {
  double theta = 0.19;    ///< central-path neighborhood radius, in (0, 0.19]
  double eps = 1e-8;      ///< termination tolerance
  double sigma = 1e-10;   ///< floor kept under mu by the step-size rule, in (0, eps)
  int max_iter = 200;
  SolveMode mode = SolveMode::practical;
};

/// Throws std::invalid_argument unless eps > sigma > 0, 0 < theta <= 0.19
/// and max_iter >= 1.
void validate_options(const SolverOptions& opts);

/// KKT residuals of an iterate:
///   r_x = Hx + lambda - gamma + c,  r_y = x + y - e,  r_z = x - z + e.
struct Residuals {
  Vector r_x;
  Vector r_y;
  Vector r_z;
};

/// (lambda'y + gamma'z) / 2n; strictly positive for interior iterates.
double duality_gap(const Iterate& it);

/// ||p o w - mu e|| / mu with p = (y, z) and w = (lambda, gamma).
/// Membership in the central-path neighborhood of radius theta is
/// proximity(it) <= theta together with strict feasibility.
double proximity(const Iterate& it);

Residuals kkt_residuals(const BoxQP& qp, const Iterate& it);

/// Composite termination measure
///   (||r_y|| + ||r_z||) / 2n + ||r_x|| / max{1, ||c||}
///                            + mu / max{1, |x'Hx + c'x|}.
double termination_measure(const BoxQP& qp, const Iterate& it);

/// 1/2 x'Hx + c'x.
double objective_value(const BoxQP& qp, const Vector& x);

/// The explicit strictly feasible starting point
///   x = 0, y = z = e,
///   lambda_i = 4(1 + ||c||^2) - c_i/2,  gamma_i = 4(1 + ||c||^2) + c_i/2,
/// which has mu = 4(1 + ||c||^2) and proximity ||c|| / (sqrt(2) mu) <= 0.19.
Iterate initial_point(const BoxQP& qp);

/// True when all of y, z, lambda, gamma are strictly positive.
bool strictly_interior(const Iterate& it);

}  // namespace arcqp
