#pragma once

#include <Eigen/Cholesky>

#include "arcqp/qp_core.hpp"

namespace arcqp {

/// First and second derivatives of the ellipse that interpolates the
/// central path at the current iterate, plus the four inner products of the
/// stacked slack/multiplier derivative pairs that the step-size polynomials
/// consume. With p = (y, z) and w = (lambda, gamma):
///
///   pdot_wdot   = pdot'wdot    (= xdot'H xdot >= 0)
///   pddot_wddot = pddot'wddot  (= xddot'H xddot >= 0)
///   pdot_wddot  = pdot'wddot   (= xdot'H xddot = pddot_wdot)
///   pddot_wdot  = pddot'wdot
struct ArcDerivatives {
  Vector x_dot, y_dot, z_dot, lambda_dot, gamma_dot;
  Vector x_ddot, y_ddot, z_ddot, lambda_ddot, gamma_ddot;
  double pdot_wdot = 0.0;
  double pddot_wddot = 0.0;
  double pdot_wddot = 0.0;
  double pddot_wdot = 0.0;
};

/// Cholesky factorization of the reduced matrix
///   M = H + diag(lambda / y) + diag(gamma / z),
/// which is symmetric positive definite at any strictly interior iterate.
/// The 5n x 5n derivative and corrector systems are never formed; every
/// solve reduces to one n x n solve against M.
class KktFactor {
 public:
  KktFactor(const BoxQP& qp, const Iterate& it);

  Vector solve(const Vector& rhs) const { return llt_.solve(rhs); }
  Index dim() const { return n_; }

 private:
  Eigen::LLT<Matrix> llt_;
  Index n_ = 0;
};

/// Factorizes M at the given iterate. Throws std::runtime_error when the
/// iterate has lost interiority (a slack or multiplier below 1e-14) or the
/// factorization fails.
KktFactor factorize(const BoxQP& qp, const Iterate& it);

/// Solves the first-derivative system: M xdot = gamma - lambda, then
///   ydot = -xdot, zdot = xdot,
///   lambdadot = lambda + (lambda/y) o xdot,
///   gammadot  = gamma  - (gamma/z)  o xdot.
/// The inner-product fields are left for second_derivatives to fill.
ArcDerivatives first_derivatives(const BoxQP& qp, const Iterate& it,
                                 const KktFactor& f);

/// Completes d with the second derivatives:
///   M xddot = 2 (lambdadot o ydot)/y - 2 (gammadot o zdot)/z,
///   yddot = -xddot, zddot = xddot,
///   lambdaddot = -2 (lambdadot o ydot)/y + (lambda/y) o xddot,
///   gammaddot  = -2 (gammadot o zdot)/z  - (gamma/z)  o xddot,
/// and fills the four cached inner products from the derivative vectors.
void second_derivatives(const BoxQP& qp, const Iterate& it, const KktFactor& f,
                        ArcDerivatives& d);

/// Point on the ellipse at angle alpha, parameterized by sin(alpha):
///   v(alpha) = v - vdot sin(alpha) + vddot (1 - cos(alpha))
/// for each of the five vectors, with cos(alpha) = sqrt(1 - sin^2(alpha)).
/// The mu field is set to gap_along_arc. Positivity of the result is NOT
/// guaranteed; the caller checks.
Iterate arc_point(const Iterate& it, const ArcDerivatives& d, double sin_alpha);

/// Closed form for the duality gap at the arc point:
///   mu(alpha) = mu (1 - sin a)
///             + ((pddot'wddot - pdot'wdot)(1-cos a)^2
///                - (pdot'wddot + pddot'wdot) sin a (1-cos a)) / 2n.
/// Agrees with duality_gap(arc_point(...)) to round-off.
double gap_along_arc(const Iterate& it, const ArcDerivatives& d,
                     double sin_alpha);

/// Newton step toward the mu-center at the candidate point.
struct CorrectorDirection {
  Vector dx, dy, dz, dlambda, dgamma;
};

/// Solves the corrector system at cand (gap mu = cand.mu): with
///   r_lambda = (mu e - lambda o y)/y,  r_gamma = (mu e - gamma o z)/z,
/// factorize M at cand and solve M dx = r_gamma - r_lambda; then
///   dy = -dx, dz = dx,
///   dlambda = r_lambda + (lambda/y) o dx,
///   dgamma  = r_gamma  - (gamma/z)  o dx.
/// Throws std::runtime_error when cand has lost interiority.
CorrectorDirection corrector_direction(const BoxQP& qp, const Iterate& cand);

/// Applies a corrector step: component-wise sum, with mu recomputed from
/// the inner products of the updated point.
Iterate apply_correction(const Iterate& cand, const CorrectorDirection& dir);

/// Stacks two n-vectors into a 2n-vector, the (y,z) / (lambda,gamma) order
/// used by the neighborhood polynomials.
Vector stack2(const Vector& a, const Vector& b);

}  // namespace arcqp
