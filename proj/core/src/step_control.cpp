#include "arcqp/step_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arcqp {

namespace {

double clamp_unit(double s) { return std::clamp(s, 0.0, 1.0); }

// Centered Hadamard norms shared by the neighborhood polynomials:
//   norm3 = ||pdot o wddot + wdot o pddot - ((pdot'wddot + pddot'wdot)/2n) e||
//   norm4 = ||pddot o wddot - wdot o pdot - ((pddot'wddot - pdot'wdot)/2n) e||
struct HadamardNorms {
  double norm3 = 0.0;
  double norm4 = 0.0;
};

HadamardNorms hadamard_norms(const ArcDerivatives& d) {
  const Vector pdot = stack2(d.y_dot, d.z_dot);
  const Vector pddot = stack2(d.y_ddot, d.z_ddot);
  const Vector wdot = stack2(d.lambda_dot, d.gamma_dot);
  const Vector wddot = stack2(d.lambda_ddot, d.gamma_ddot);
  const double two_n = static_cast<double>(pdot.size());

  const Vector v3 = pdot.cwiseProduct(wddot) + wdot.cwiseProduct(pddot);
  const Vector v4 = pddot.cwiseProduct(wddot) - wdot.cwiseProduct(pdot);
  const double mean3 = (d.pdot_wddot + d.pddot_wdot) / two_n;
  const double mean4 = (d.pddot_wddot - d.pdot_wdot) / two_n;

  HadamardNorms h;
  h.norm3 = (v3.array() - mean3).matrix().norm();
  h.norm4 = (v4.array() - mean4).matrix().norm();
  return h;
}

double one_minus_cos(double s) {
  return 1.0 - std::sqrt(std::max(0.0, 1.0 - s * s));
}

}  // namespace

double cardano_root(double p, double q) {
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double delta = half_q * half_q + third_p * third_p * third_p;
  if (!(delta > 0.0)) {
    throw std::invalid_argument(
        "cardano_root requires (q/2)^2 + (p/3)^3 > 0 (one real root)");
  }
  const double a = -half_q;
  const double sq = std::sqrt(delta);
  // Take the cube root of the larger-magnitude term and recover the other
  // factor from u*v = -p/3, avoiding cancellation between the two radicals.
  const double u3 = (a >= 0.0) ? a + sq : a - sq;
  const double u = std::cbrt(u3);
  if (u == 0.0) return 0.0;
  return u - third_p / u;
}

double positivity_step_bound(double mu, double pdot_wdot, Index n,
                             double sigma) {
  if (!(mu > sigma)) {
    throw std::invalid_argument(
        "positivity_step_bound requires mu > sigma; solver should have "
        "terminated");
  }
  const double coeff = pdot_wdot / (2.0 * static_cast<double>(n));
  const auto g = [&](double s) {
    const double s2 = s * s;
    return sigma - (mu * (1.0 - s) - coeff * (s2 * s2 + s2));
  };
  return smallest_positive_root_monotone(g);
}

double conservative_positivity_bound(double theta) {
  const double coeff = (1.0 + theta) / (2.0 * (1.0 - theta));
  const auto g = [&](double s) {
    const double s2 = s * s;
    return -(1.0 - s - coeff * (s2 * s2 + s2));
  };
  return smallest_positive_root_monotone(g);
}

NeighborhoodQuartic neighborhood_coeffs(double theta, double mu, Index n,
                                        const ArcDerivatives& d) {
  const HadamardNorms h = hadamard_norms(d);
  const double nd = static_cast<double>(n);
  NeighborhoodQuartic q;
  q.a0 = -theta * mu;
  q.a1 = theta * mu;
  q.a2 = theta * d.pdot_wdot / nd;
  q.a3 = h.norm3;
  q.a4 = h.norm4 + theta * d.pdot_wdot / nd;
  return q;
}

double neighborhood_step_bound(const NeighborhoodQuartic& q) {
  const auto f = [&](double s) {
    return (((q.a4 * s + q.a3) * s + q.a2) * s + q.a1) * s + q.a0;
  };
  return smallest_positive_root_monotone(f);
}

double relaxed_neighborhood_step_bound(double theta, double mu, Index n,
                                       const ArcDerivatives& d) {
  const HadamardNorms h = hadamard_norms(d);
  const double nd = static_cast<double>(n);
  const double b3 = h.norm3 + theta / nd * (d.pdot_wddot + d.pddot_wdot);
  const double b4 = h.norm4 - theta / nd * (d.pddot_wddot - d.pdot_wdot);
  const double b3h = std::max(b3, 0.0);
  const double b4h = std::max(b4, 0.0);
  const auto f = [&](double s) {
    const double nu = one_minus_cos(s);
    return b4h * nu * nu + b3h * s * nu + theta * mu * s - theta * mu;
  };
  return smallest_positive_root_monotone(f);
}

double gap_decrease_step_bound(double mu, Index n, double pddot_wddot) {
  const double v = pddot_wddot / (2.0 * static_cast<double>(n) * mu);
  if (v <= 1.0 / 6.0) return 1.0;
  return clamp_unit(cardano_root(0.5, -1.0 / (4.0 * v)));
}

double gap_monotone_step_bound(double mu, Index n, double pddot_wddot) {
  const double nmu = static_cast<double>(n) * mu;
  if (pddot_wddot <= nmu) return 1.0;
  return clamp_unit(cardano_root(1.0, -2.0 * nmu / pddot_wddot));
}

StepBudget select_step(double theta, const Iterate& it,
                       const ArcDerivatives& d, const SolverOptions& opts) {
  const Index n = it.x.size();
  StepBudget b;
  b.sin_positivity = positivity_step_bound(it.mu, d.pdot_wdot, n, opts.sigma);
  const double tight = neighborhood_step_bound(
      neighborhood_coeffs(theta, it.mu, n, d));
  const double relaxed = relaxed_neighborhood_step_bound(theta, it.mu, n, d);
  b.sin_proximity = std::max(tight, relaxed);
  b.sin_decrease = gap_decrease_step_bound(it.mu, n, d.pddot_wddot);
  b.sin_alpha =
      std::min({b.sin_positivity, b.sin_proximity, b.sin_decrease});
  return b;
}

}  // namespace arcqp
