#include "arcqp/qp_core.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace arcqp {

namespace {

constexpr double kSymmetryTol = 1e-12;

void check_same_size(const Iterate& it) {
  const Index n = it.x.size();
  if (it.y.size() != n || it.z.size() != n || it.lambda.size() != n ||
      it.gamma.size() != n) {
    throw std::invalid_argument("iterate vectors have mismatched dimensions");
  }
}

}  // namespace

BoxQP make_box_qp(Matrix H, Vector c) {
  if (H.rows() != H.cols()) {
    std::ostringstream msg;
    msg << "H must be square, got " << H.rows() << "x" << H.cols();
    throw std::invalid_argument(msg.str());
  }
  if (H.rows() == 0) {
    throw std::invalid_argument("H must have dimension >= 1");
  }
  if (c.size() != H.rows()) {
    std::ostringstream msg;
    msg << "c has dimension " << c.size() << ", expected " << H.rows();
    throw std::invalid_argument(msg.str());
  }
  for (Index i = 0; i < H.rows(); ++i) {
    for (Index j = i + 1; j < H.cols(); ++j) {
      const double diff = std::abs(H(i, j) - H(j, i));
      if (!(diff <= kSymmetryTol)) {
        std::ostringstream msg;
        msg << "H is not symmetric: H(" << i << "," << j << ") = " << H(i, j)
            << " vs H(" << j << "," << i << ") = " << H(j, i)
            << " (|difference| = " << diff << " > " << kSymmetryTol << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  Eigen::LLT<Matrix> llt(H);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(
        "H is not positive definite (Cholesky factorization failed)");
  }
  BoxQP qp;
  qp.n = H.rows();
  qp.H = std::move(H);
  qp.c = std::move(c);
  return qp;
}

void validate_options(const SolverOptions& opts) {
  if (!(opts.theta > 0.0) || !(opts.theta <= 0.19)) {
    throw std::invalid_argument("theta must lie in (0, 0.19]");
  }
  if (!(opts.sigma > 0.0) || !(opts.eps > opts.sigma)) {
    throw std::invalid_argument("required: eps > sigma > 0");
  }
  if (opts.max_iter < 1) {
    throw std::invalid_argument("max_iter must be >= 1");
  }
}

double duality_gap(const Iterate& it) {
  check_same_size(it);
  const double n = static_cast<double>(it.x.size());
  return (it.lambda.dot(it.y) + it.gamma.dot(it.z)) / (2.0 * n);
}

double proximity(const Iterate& it) {
  check_same_size(it);
  if (!(it.mu > 0.0)) {
    throw std::invalid_argument("proximity requires mu > 0");
  }
  const Vector py = it.y.cwiseProduct(it.lambda).array() - it.mu;
  const Vector pz = it.z.cwiseProduct(it.gamma).array() - it.mu;
  return std::sqrt(py.squaredNorm() + pz.squaredNorm()) / it.mu;
}

Residuals kkt_residuals(const BoxQP& qp, const Iterate& it) {
  check_same_size(it);
  if (it.x.size() != qp.n) {
    throw std::invalid_argument("iterate dimension does not match problem");
  }
  Residuals r;
  r.r_x = qp.H * it.x + it.lambda - it.gamma + qp.c;
  r.r_y = it.x + it.y - Vector::Ones(qp.n);
  r.r_z = it.x - it.z + Vector::Ones(qp.n);
  return r;
}

double termination_measure(const BoxQP& qp, const Iterate& it) {
  const Residuals r = kkt_residuals(qp, it);
  const double n = static_cast<double>(qp.n);
  const double quad = it.x.dot(qp.H * it.x) + qp.c.dot(it.x);
  return (r.r_y.norm() + r.r_z.norm()) / (2.0 * n) +
         r.r_x.norm() / std::max(1.0, qp.c.norm()) +
         it.mu / std::max(1.0, std::abs(quad));
}

double objective_value(const BoxQP& qp, const Vector& x) {
  return 0.5 * x.dot(qp.H * x) + qp.c.dot(x);
}

Iterate initial_point(const BoxQP& qp) {
  const double base = 4.0 * (1.0 + qp.c.squaredNorm());
  Iterate it;
  it.x = Vector::Zero(qp.n);
  it.y = Vector::Ones(qp.n);
  it.z = Vector::Ones(qp.n);
  it.lambda = Vector::Constant(qp.n, base) - 0.5 * qp.c;
  it.gamma = Vector::Constant(qp.n, base) + 0.5 * qp.c;
  it.mu = duality_gap(it);
  return it;
}

bool strictly_interior(const Iterate& it) {
  return (it.y.array() > 0.0).all() && (it.z.array() > 0.0).all() &&
         (it.lambda.array() > 0.0).all() && (it.gamma.array() > 0.0).all();
}

}  // namespace arcqp
