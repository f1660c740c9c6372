#include "arcqp/kkt_system.hpp"

#include <cmath>
#include <stdexcept>

namespace arcqp {

namespace {

// Divisions by slacks/multipliers below this are refused; the iterate has
// effectively left the interior.
constexpr double kMinInterior = 1e-14;

void require_interior(const Iterate& it) {
  if (it.y.minCoeff() <= kMinInterior || it.z.minCoeff() <= kMinInterior ||
      it.lambda.minCoeff() <= kMinInterior ||
      it.gamma.minCoeff() <= kMinInterior) {
    throw std::runtime_error(
        "iterate lost interiority: slack or multiplier below 1e-14");
  }
}

}  // namespace

KktFactor::KktFactor(const BoxQP& qp, const Iterate& it) : n_(qp.n) {
  Matrix M = qp.H;
  M.diagonal() += (it.lambda.array() / it.y.array() +
                   it.gamma.array() / it.z.array())
                      .matrix();
  llt_.compute(M);
  if (llt_.info() != Eigen::Success) {
    throw std::runtime_error(
        "KKT factorization failed: reduced matrix not positive definite");
  }
}

KktFactor factorize(const BoxQP& qp, const Iterate& it) {
  if (it.x.size() != qp.n) {
    throw std::invalid_argument("iterate dimension does not match problem");
  }
  require_interior(it);
  return KktFactor(qp, it);
}

ArcDerivatives first_derivatives(const BoxQP& qp, const Iterate& it,
                                 const KktFactor& f) {
  (void)qp;
  ArcDerivatives d;
  d.x_dot = f.solve(it.gamma - it.lambda);
  d.y_dot = -d.x_dot;
  d.z_dot = d.x_dot;
  d.lambda_dot =
      it.lambda + (it.lambda.array() / it.y.array() * d.x_dot.array()).matrix();
  d.gamma_dot =
      it.gamma - (it.gamma.array() / it.z.array() * d.x_dot.array()).matrix();
  return d;
}

void second_derivatives(const BoxQP& qp, const Iterate& it, const KktFactor& f,
                        ArcDerivatives& d) {
  (void)qp;
  const Vector ry =
      2.0 * (d.lambda_dot.array() * d.y_dot.array() / it.y.array()).matrix();
  const Vector rz =
      2.0 * (d.gamma_dot.array() * d.z_dot.array() / it.z.array()).matrix();
  d.x_ddot = f.solve(ry - rz);
  d.y_ddot = -d.x_ddot;
  d.z_ddot = d.x_ddot;
  d.lambda_ddot =
      -ry + (it.lambda.array() / it.y.array() * d.x_ddot.array()).matrix();
  d.gamma_ddot =
      -rz - (it.gamma.array() / it.z.array() * d.x_ddot.array()).matrix();

  d.pdot_wdot = d.y_dot.dot(d.lambda_dot) + d.z_dot.dot(d.gamma_dot);
  d.pddot_wddot = d.y_ddot.dot(d.lambda_ddot) + d.z_ddot.dot(d.gamma_ddot);
  d.pdot_wddot = d.y_dot.dot(d.lambda_ddot) + d.z_dot.dot(d.gamma_ddot);
  d.pddot_wdot = d.y_ddot.dot(d.lambda_dot) + d.z_ddot.dot(d.gamma_dot);
}

Iterate arc_point(const Iterate& it, const ArcDerivatives& d,
                  double sin_alpha) {
  const double s = sin_alpha;
  const double nu = 1.0 - std::sqrt(std::max(0.0, 1.0 - s * s));
  Iterate out;
  out.x = it.x - d.x_dot * s + d.x_ddot * nu;
  out.y = it.y - d.y_dot * s + d.y_ddot * nu;
  out.z = it.z - d.z_dot * s + d.z_ddot * nu;
  out.lambda = it.lambda - d.lambda_dot * s + d.lambda_ddot * nu;
  out.gamma = it.gamma - d.gamma_dot * s + d.gamma_ddot * nu;
  out.mu = gap_along_arc(it, d, sin_alpha);
  return out;
}

double gap_along_arc(const Iterate& it, const ArcDerivatives& d,
                     double sin_alpha) {
  const double s = sin_alpha;
  const double nu = 1.0 - std::sqrt(std::max(0.0, 1.0 - s * s));
  const double two_n = 2.0 * static_cast<double>(it.x.size());
  return it.mu * (1.0 - s) +
         ((d.pddot_wddot - d.pdot_wdot) * nu * nu -
          (d.pdot_wddot + d.pddot_wdot) * s * nu) /
             two_n;
}

CorrectorDirection corrector_direction(const BoxQP& qp, const Iterate& cand) {
  require_interior(cand);
  const KktFactor f(qp, cand);
  const double mu = cand.mu;
  const Vector r_lambda =
      ((mu - cand.lambda.array() * cand.y.array()) / cand.y.array()).matrix();
  const Vector r_gamma =
      ((mu - cand.gamma.array() * cand.z.array()) / cand.z.array()).matrix();
  CorrectorDirection dir;
  dir.dx = f.solve(r_gamma - r_lambda);
  dir.dy = -dir.dx;
  dir.dz = dir.dx;
  dir.dlambda =
      r_lambda + (cand.lambda.array() / cand.y.array() * dir.dx.array()).matrix();
  dir.dgamma =
      r_gamma - (cand.gamma.array() / cand.z.array() * dir.dx.array()).matrix();
  return dir;
}

Iterate apply_correction(const Iterate& cand, const CorrectorDirection& dir) {
  Iterate out;
  out.x = cand.x + dir.dx;
  out.y = cand.y + dir.dy;
  out.z = cand.z + dir.dz;
  out.lambda = cand.lambda + dir.dlambda;
  out.gamma = cand.gamma + dir.dgamma;
  out.mu = duality_gap(out);
  return out;
}

Vector stack2(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace arcqp
