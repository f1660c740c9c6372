#pragma once

#include "arcqp/qp_core.hpp"

namespace arcqp {

/// Finite-horizon discrete-time LQR data with saturating inputs:
///
///   x_{s+1} = A x_s + B u_s,   -e <= u_s <= e,   s = 0..N-1,
///   J = 1/2 x_N'P x_N + 1/2 sum_{k=0}^{N-1} (x_k'Q x_k + u_k'R u_k),
///
/// starting from x_0 = x0. P, Q, R symmetric positive definite.
struct LqrProblem {
  Matrix A;  ///< r x r state transition
  Matrix B;  ///< r x m input map
  Matrix P;  ///< r x r terminal weight
  Matrix Q;  ///< r x r state weight
  Matrix R;  ///< m x m input weight
  int N = 0;
  Vector x0;  ///< current state, dimension r
};

/// Throws std::invalid_argument on inconsistent dimensions, N < 1, or
/// non-SPD weights.
void validate_lqr(const LqrProblem& lqr);

/// The box QP over the stacked controls v = (u_0, ..., u_{N-1}) obtained by
/// eliminating the states through the dynamics. The full cost satisfies
///   J(u) = 1/2 v'Hv + c'v + objective_offset
/// for every control sequence, objective_offset collecting the terms that
/// depend only on x0.
struct CondensedQP {
  BoxQP qp;  ///< n = N * m
  int N = 0;
  int m = 0;
  int r = 0;
  double objective_offset = 0.0;
};

/// The block row [A^{k-1} B, A^{k-2} B, ..., B] (r x k*m) mapping the first
/// k stacked controls to the zero-state response of x_k.
Matrix control_to_state_map(const Matrix& A, const Matrix& B, int k);

/// Eliminates the state variables and assembles H, c and the constant
/// offset. H is dense and symmetric positive definite (its block diagonal
/// contains R).
CondensedQP condense(const LqrProblem& lqr);

struct SimulationResult {
  Matrix states;  ///< r x (N+1), column s holds x_s, column 0 = x0
  double cost = 0.0;  ///< full J including the x0-only terms
};

/// Propagates the dynamics under the control sequence u (m x N, column s is
/// u_s) and evaluates J by direct summation. Slightly out-of-bounds inputs
/// are accepted; only dimension mismatches throw.
SimulationResult simulate(const LqrProblem& lqr, const Matrix& u);

/// Reshapes a stacked control vector of length N*m into the m x N matrix
/// layout simulate expects.
Matrix unstack_controls(const Vector& v, int m);

/// Copy of the problem with Q <- h Q and R <- h R (P unchanged), mapping a
/// sampled-time objective with stage weight h onto the template above.
/// Throws std::invalid_argument when h <= 0.
LqrProblem scale_stage_costs(const LqrProblem& lqr, double h);

}  // namespace arcqp
