#include "arcqp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "arcqp/kkt_system.hpp"
#include "arcqp/step_control.hpp"

namespace arcqp {

namespace {

constexpr double kSinCap = 1.0 - 1e-12;
constexpr int kMaxHalvings = 30;

// Slack allowed on the neighborhood checks. The adaptive mode picks steps
// sitting exactly on the proximity root, so round-off can land a hair
// outside; the fixed step has a wide margin and is checked exactly.
double proximity_slack(bool theoretical) { return theoretical ? 0.0 : 1e-8; }

bool positive_interior(const Iterate& it) {
  return strictly_interior(it) && it.mu > 0.0;
}

SolveReport run_path_following(const BoxQP& qp, const SolverOptions& opts,
                               bool theoretical) {
  validate_options(opts);

  SolveReport rep;
  Iterate it = initial_point(qp);
  double kappa = termination_measure(qp, it);

  const double theta = opts.theta;
  const double fixed_sin = theta / std::sqrt(static_cast<double>(qp.n));
  const double conservative_bar =
      theoretical ? conservative_positivity_bound(theta) : 0.0;
  const double slack = proximity_slack(theoretical);

  const auto finished = [&]() {
    return theoretical ? it.mu <= opts.eps : kappa <= opts.eps;
  };

  SolveStatus status = SolveStatus::converged;
  int k = 0;
  while (!finished()) {
    if (k >= opts.max_iter) {
      status = SolveStatus::max_iter_reached;
      break;
    }
    if (it.mu <= opts.sigma) {
      status = SolveStatus::mu_below_sigma;
      break;
    }
    try {
      const KktFactor f = factorize(qp, it);
      ArcDerivatives d = first_derivatives(qp, it, f);
      second_derivatives(qp, it, f, d);

      double s = 0.0;
      if (theoretical) {
        s = fixed_sin;
        // The fixed step is provably below both the neighborhood root and
        // the conservative positivity bound; a violation means the floating
        // point state no longer matches the theory.
        const double tilde =
            neighborhood_step_bound(neighborhood_coeffs(theta, it.mu, qp.n, d));
        if (s > tilde + 1e-12 || s > conservative_bar + 1e-12) {
          throw std::runtime_error(
              "fixed step exceeds its guaranteed safe bounds");
        }
      } else {
        s = select_step(theta, it, d, opts).sin_alpha;
      }
      s = std::min(s, kSinCap);

      Iterate cand = arc_point(it, d, s);
      int halvings = 0;
      while (!positive_interior(cand)) {
        if (++halvings > kMaxHalvings) {
          throw std::runtime_error("arc step lost positivity");
        }
        s *= 0.5;
        cand = arc_point(it, d, s);
      }
      const double prox_before = proximity(cand);
      if (prox_before > 2.0 * theta + slack) {
        throw std::runtime_error("arc point left the doubled neighborhood");
      }

      const CorrectorDirection dir = corrector_direction(qp, cand);
      Iterate next = apply_correction(cand, dir);
      if (!positive_interior(next)) {
        throw std::runtime_error("corrector step lost positivity");
      }
      const double prox_after = proximity(next);
      if (prox_after > theta + slack) {
        throw std::runtime_error("corrector failed to re-center the iterate");
      }

      it = std::move(next);
      kappa = termination_measure(qp, it);
      ++k;

      const Residuals r = kkt_residuals(qp, it);
      IterationRecord rec;
      rec.k = k;
      rec.mu = it.mu;
      rec.sin_alpha = s;
      rec.kappa = kappa;
      rec.r_norm_x = r.r_x.norm();
      rec.r_norm_y = r.r_y.norm();
      rec.r_norm_z = r.r_z.norm();
      rec.proximity_before = prox_before;
      rec.proximity_after = prox_after;
      rep.iterations.push_back(rec);
    } catch (const std::runtime_error& e) {
      status = SolveStatus::numerical_failure;
      rep.message = e.what();
      break;
    }
  }

  rep.status = status;
  rep.final = std::move(it);
  rep.objective = objective_value(qp, rep.final.x);
  return rep;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iter_reached:
      return "max_iter_reached";
    case SolveStatus::mu_below_sigma:
      return "mu_below_sigma";
    case SolveStatus::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

SolveReport solve_theoretical(const BoxQP& qp, const SolverOptions& opts) {
  return run_path_following(qp, opts, /*theoretical=*/true);
}

SolveReport solve_practical(const BoxQP& qp, const SolverOptions& opts) {
  return run_path_following(qp, opts, /*theoretical=*/false);
}

SolveReport solve(const BoxQP& qp, const SolverOptions& opts) {
  return opts.mode == SolveMode::theoretical ? solve_theoretical(qp, opts)
                                             : solve_practical(qp, opts);
}

bool check_optimality(const BoxQP& qp, const Vector& x, double tol) {
  if (x.size() != qp.n) return false;
  if ((x.array().abs() > 1.0 + tol).any()) return false;
  const Vector g = qp.H * x + qp.c;
  double worst = 0.0;
  for (Index i = 0; i < qp.n; ++i) {
    // Assign the bound multiplier the gradient asks for: lambda_i = -g_i
    // when the unconstrained target crosses the upper bound, gamma_i = g_i
    // below the lower bound, both zero inside. What remains unexplained is
    // the per-coordinate KKT violation.
    const double target = x[i] - g[i];
    double viol;
    if (target > 1.0) {
      viol = std::abs(x[i] - 1.0);
    } else if (target < -1.0) {
      viol = std::abs(x[i] + 1.0);
    } else {
      viol = std::abs(g[i]);
    }
    worst = std::max(worst, viol);
  }
  return worst <= tol;
}

}  // namespace arcqp
