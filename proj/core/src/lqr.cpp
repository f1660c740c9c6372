#include "arcqp/lqr.hpp"

#include <Eigen/Cholesky>

#include <sstream>
#include <stdexcept>
#include <vector>

namespace arcqp {

namespace {

void require_spd(const Matrix& W, const char* name) {
  if (W.rows() != W.cols()) {
    std::ostringstream msg;
    msg << name << " must be square, got " << W.rows() << "x" << W.cols();
    throw std::invalid_argument(msg.str());
  }
  if ((W - W.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    std::ostringstream msg;
    msg << name << " is not symmetric";
    throw std::invalid_argument(msg.str());
  }
  Eigen::LLT<Matrix> llt(W);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << name << " is not positive definite";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void validate_lqr(const LqrProblem& lqr) {
  const Index r = lqr.A.rows();
  if (lqr.A.cols() != r) {
    throw std::invalid_argument("A must be square");
  }
  if (lqr.B.rows() != r) {
    throw std::invalid_argument("B must have as many rows as A");
  }
  if (lqr.B.cols() < 1) {
    throw std::invalid_argument("B must have at least one column");
  }
  if (lqr.x0.size() != r) {
    throw std::invalid_argument("x0 dimension does not match A");
  }
  if (lqr.N < 1) {
    throw std::invalid_argument("horizon N must be >= 1");
  }
  if (lqr.P.rows() != r || lqr.Q.rows() != r || lqr.R.rows() != lqr.B.cols()) {
    throw std::invalid_argument("weight dimensions do not match A/B");
  }
  require_spd(lqr.P, "P");
  require_spd(lqr.Q, "Q");
  require_spd(lqr.R, "R");
}

Matrix control_to_state_map(const Matrix& A, const Matrix& B, int k) {
  if (A.rows() != A.cols() || B.rows() != A.rows()) {
    throw std::invalid_argument("A/B dimensions are inconsistent");
  }
  if (k < 1) {
    throw std::invalid_argument("k must be >= 1");
  }
  const Index r = A.rows();
  const Index m = B.cols();
  Matrix phi(r, k * m);
  // Rightmost block is B; moving left multiplies by A once more.
  Matrix power = B;
  for (int j = 0; j < k; ++j) {
    if (j > 0) power = A * power;
    phi.middleCols((k - 1 - j) * m, m) = power;
  }
  return phi;
}

CondensedQP condense(const LqrProblem& lqr) {
  validate_lqr(lqr);
  const Index r = lqr.A.rows();
  const Index m = lqr.B.cols();
  const int N = lqr.N;
  const Index n = static_cast<Index>(N) * m;

  // phi_k is the trailing r x (k m) block of phi_N, so one assembly of the
  // full map serves every horizon step.
  const Matrix phi = control_to_state_map(lqr.A, lqr.B, N);

  // Zero-input state trajectory w_k = A^k x0.
  std::vector<Vector> w(static_cast<size_t>(N) + 1);
  w[0] = lqr.x0;
  for (int k = 1; k <= N; ++k) w[k] = lqr.A * w[k - 1];

  Matrix H = Matrix::Zero(n, n);
  Vector c = Vector::Zero(n);
  double offset = 0.5 * lqr.x0.dot(lqr.Q * lqr.x0);

  for (int k = 1; k < N; ++k) {
    const Index km = static_cast<Index>(k) * m;
    const auto phi_k = phi.rightCols(km);
    const Matrix q_phi = lqr.Q * phi_k;
    H.topLeftCorner(km, km) += phi_k.transpose() * q_phi;
    c.head(km) += q_phi.transpose() * w[k];
    offset += 0.5 * w[k].dot(lqr.Q * w[k]);
  }

  const Matrix p_phi = lqr.P * phi;
  H += phi.transpose() * p_phi;
  c += p_phi.transpose() * w[N];
  offset += 0.5 * w[N].dot(lqr.P * w[N]);

  for (int k = 0; k < N; ++k) {
    H.block(k * m, k * m, m, m) += lqr.R;
  }
  H = 0.5 * (H + H.transpose()).eval();

  CondensedQP out;
  out.qp = make_box_qp(std::move(H), std::move(c));
  out.N = N;
  out.m = static_cast<int>(m);
  out.r = static_cast<int>(r);
  out.objective_offset = offset;
  return out;
}

SimulationResult simulate(const LqrProblem& lqr, const Matrix& u) {
  validate_lqr(lqr);
  const Index r = lqr.A.rows();
  const Index m = lqr.B.cols();
  if (u.rows() != m || u.cols() != lqr.N) {
    std::ostringstream msg;
    msg << "control sequence must be " << m << "x" << lqr.N << ", got "
        << u.rows() << "x" << u.cols();
    throw std::invalid_argument(msg.str());
  }
  SimulationResult out;
  out.states.resize(r, lqr.N + 1);
  out.states.col(0) = lqr.x0;
  double cost = 0.0;
  for (int s = 0; s < lqr.N; ++s) {
    const Vector xs = out.states.col(s);
    const Vector us = u.col(s);
    cost += 0.5 * (xs.dot(lqr.Q * xs) + us.dot(lqr.R * us));
    out.states.col(s + 1) = lqr.A * xs + lqr.B * us;
  }
  const Vector xn = out.states.col(lqr.N);
  cost += 0.5 * xn.dot(lqr.P * xn);
  out.cost = cost;
  return out;
}

Matrix unstack_controls(const Vector& v, int m) {
  if (m < 1 || v.size() % m != 0) {
    throw std::invalid_argument("stacked control length is not a multiple of m");
  }
  const Index steps = v.size() / m;
  Matrix u(m, steps);
  for (Index s = 0; s < steps; ++s) u.col(s) = v.segment(s * m, m);
  return u;
}

LqrProblem scale_stage_costs(const LqrProblem& lqr, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("stage weight h must be positive");
  }
  LqrProblem out = lqr;
  out.Q *= h;
  out.R *= h;
  return out;
}

}  // namespace arcqp
