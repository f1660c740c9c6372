#pragma once

#include <stdexcept>
#include <utility>

#include "arcqp/kkt_system.hpp"
#include "arcqp/qp_core.hpp"

namespace arcqp {

/// Coefficients of the neighborhood polynomial
///   q(s) = a4 s^4 + a3 s^3 + a2 s^2 + a1 s + a0,   s = sin(alpha),
/// whose unique positive root bounds the arc step that keeps the candidate
/// inside the doubled neighborhood. Always a0 = -theta mu < 0, a1 = theta mu
/// and a2, a3, a4 >= 0, so q is monotone increasing on [0, 1].
struct NeighborhoodQuartic {
  double a4 = 0.0, a3 = 0.0, a2 = 0.0, a1 = 0.0, a0 = 0.0;
};

/// The step-size candidates, all stored as sines in (0, 1]:
///   sin_positivity: keeps mu(alpha) >= sigma (hence the point interior),
///   sin_proximity:  keeps the candidate within the doubled neighborhood,
///   sin_decrease:   minimizes the duality-gap upper bound,
///   sin_alpha:      the selected step, min of the three.
struct StepBudget {
  double sin_positivity = 0.0;
  double sin_proximity = 0.0;
  double sin_decrease = 0.0;
  double sin_alpha = 0.0;
};

/// The unique real root of x^3 + p x + q = 0 when
/// Delta = (q/2)^2 + (p/3)^3 > 0. Throws std::invalid_argument otherwise.
double cardano_root(double p, double q);

/// Smallest root in (0, 1] of a monotone nondecreasing f with f(0) < 0,
/// located by bisection to bracket width <= tol. Returns 1 when f(1) <= 0
/// (no sign change: the step is capped at pi/2). Throws
/// std::invalid_argument when f(0) >= 0.
template <class F>
double smallest_positive_root_monotone(F&& f, double tol = 1e-12) {
  if (f(0.0) >= 0.0) {
    throw std::invalid_argument(
        "smallest_positive_root_monotone: f(0) >= 0, malformed polynomial");
  }
  if (f(1.0) <= 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// Largest sine keeping the gap above sigma: the root in (0, 1] of
///   f(s) = mu (1 - s) - (pdot_wdot / 2n)(s^4 + s^2) = sigma,
/// f being monotone decreasing with f(0) = mu > sigma.
/// Throws std::invalid_argument when mu <= sigma (caller should have
/// terminated).
double positivity_step_bound(double mu, double pdot_wdot, Index n,
                             double sigma);

/// Worst-case variant of positivity_step_bound: the root of
///   1 - s - ((1 + theta) / (2 (1 - theta))) (s^4 + s^2) = 0,
/// independent of the iterate. Equals 0.6158... at theta = 0.19.
double conservative_positivity_bound(double theta);

/// Builds the neighborhood polynomial from the derivative inner products
/// and the centered Hadamard norms:
///   a0 = -theta mu, a1 = theta mu, a2 = theta pdot'wdot / n,
///   a3 = ||pdot o wddot + wdot o pddot - ((pdot'wddot + pddot'wdot)/2n) e||,
///   a4 = ||pddot o wddot - wdot o pdot - ((pddot'wddot - pdot'wdot)/2n) e||
///        + theta pdot'wdot / n.
NeighborhoodQuartic neighborhood_coeffs(double theta, double mu, Index n,
                                        const ArcDerivatives& d);

/// Unique positive root of the neighborhood polynomial in (0, 1].
double neighborhood_step_bound(const NeighborhoodQuartic& q);

/// Sharper proximity bound: smallest positive root of
///   b4^ (1-cos a)^2 + b3^ sin a (1-cos a) + theta mu sin a - theta mu,
/// where b3, b4 carry signed inner-product corrections and are clamped at
/// zero. Monotone increasing in sin(alpha), negative at 0.
double relaxed_neighborhood_step_bound(double theta, double mu, Index n,
                                       const ArcDerivatives& d);

/// Minimizer of the duality-gap upper bound: pi/2 (sine 1) when
/// v = pddot'wddot / (2 n mu) <= 1/6, otherwise the Cardano root of
/// 4 v s^3 + 2 v s - 1 = 0.
double gap_decrease_step_bound(double mu, Index n, double pddot_wddot);

/// Largest sine with a guaranteed non-increasing gap along the arc itself:
/// 1 when xddot'H xddot <= n mu, otherwise the Cardano root of
/// s^3 + s - 2 n mu / (xddot'H xddot) = 0. Shipped for validation only;
/// step selection uses gap_decrease_step_bound instead.
double gap_monotone_step_bound(double mu, Index n, double pddot_wddot);

/// Assembles the three candidates and selects sin(alpha) as their minimum:
///   sin_positivity from positivity_step_bound (at opts.sigma),
///   sin_proximity = max(neighborhood root, relaxed root),
///   sin_decrease from gap_decrease_step_bound.
StepBudget select_step(double theta, const Iterate& it,
                       const ArcDerivatives& d, const SolverOptions& opts);

}  // namespace arcqp
