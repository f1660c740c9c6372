#include "arcqp/qp_core.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

namespace arcqp {
namespace {

using test::random_box_qp;

Iterate ones_iterate(Index n) {
  Iterate it;
  it.x = Vector::Zero(n);
  it.y = Vector::Ones(n);
  it.z = Vector::Ones(n);
  it.lambda = Vector::Ones(n);
  it.gamma = Vector::Ones(n);
  it.mu = duality_gap(it);
  return it;
}

TEST(MakeBoxQp, RejectsNonSymmetric) {
  Matrix H(2, 2);
  H << 1.0, 0.5, 0.3, 1.0;
  try {
    make_box_qp(H, Vector::Zero(2));
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("H(0,1)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("H(1,0)"), std::string::npos) << msg;
  }
}

TEST(MakeBoxQp, RejectsIndefinite) {
  Matrix H(2, 2);
  H << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  EXPECT_THROW(make_box_qp(H, Vector::Zero(2)), std::invalid_argument);
}

TEST(MakeBoxQp, RejectsDimensionMismatch) {
  EXPECT_THROW(make_box_qp(Matrix::Identity(2, 2), Vector::Zero(3)),
               std::invalid_argument);
  EXPECT_THROW(make_box_qp(Matrix::Zero(2, 3), Vector::Zero(2)),
               std::invalid_argument);
}

TEST(SolverOptionsTest, Validation) {
  SolverOptions ok;
  EXPECT_NO_THROW(validate_options(ok));

  SolverOptions bad = ok;
  bad.theta = 0.2;
  EXPECT_THROW(validate_options(bad), std::invalid_argument);
  bad = ok;
  bad.theta = 0.0;
  EXPECT_THROW(validate_options(bad), std::invalid_argument);
  bad = ok;
  bad.sigma = bad.eps;
  EXPECT_THROW(validate_options(bad), std::invalid_argument);
  bad = ok;
  bad.sigma = 0.0;
  EXPECT_THROW(validate_options(bad), std::invalid_argument);
  bad = ok;
  bad.max_iter = 0;
  EXPECT_THROW(validate_options(bad), std::invalid_argument);
}

TEST(DualityGap, AllOnesIsOne) {
  EXPECT_DOUBLE_EQ(duality_gap(ones_iterate(1)), 1.0);
  EXPECT_DOUBLE_EQ(duality_gap(ones_iterate(7)), 1.0);
}

TEST(DualityGap, InitialPointZeroC) {
  const BoxQP qp = make_box_qp(Matrix::Identity(3, 3), Vector::Zero(3));
  EXPECT_DOUBLE_EQ(duality_gap(initial_point(qp)), 4.0);
}

TEST(DualityGap, InitialPointUnitC) {
  Vector c = Vector::Zero(3);
  c[0] = 1.0;
  const BoxQP qp = make_box_qp(Matrix::Identity(3, 3), c);
  EXPECT_DOUBLE_EQ(duality_gap(initial_point(qp)), 8.0);
}

TEST(DualityGap, DimensionMismatchThrows) {
  Iterate it = ones_iterate(2);
  it.gamma = Vector::Ones(3);
  EXPECT_THROW(duality_gap(it), std::invalid_argument);
}

TEST(Proximity, CenteredInitialPointIsZero) {
  const BoxQP qp = make_box_qp(Matrix::Identity(4, 4), Vector::Zero(4));
  EXPECT_NEAR(proximity(initial_point(qp)), 0.0, 1e-14);
}

TEST(Proximity, InitialPointClosedForm) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const BoxQP qp = random_box_qp(5, rng);
    const Iterate it = initial_point(qp);
    const double expected =
        qp.c.norm() / (std::sqrt(2.0) * 4.0 * (1.0 + qp.c.squaredNorm()));
    EXPECT_NEAR(proximity(it), expected, 1e-12);
  }
}

TEST(Proximity, HandValue) {
  Iterate it = ones_iterate(1);
  it.lambda[0] = 2.0;
  it.mu = duality_gap(it);
  EXPECT_DOUBLE_EQ(it.mu, 1.5);
  // products (2, 1), deviation (0.5, -0.5)
  EXPECT_NEAR(proximity(it), std::sqrt(0.5) / 1.5, 1e-15);
}

TEST(Proximity, NonPositiveMuThrows) {
  Iterate it = ones_iterate(2);
  it.mu = 0.0;
  EXPECT_THROW(proximity(it), std::invalid_argument);
}

TEST(Proximity, ScaleConsistent) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Iterate it = test::random_interior_iterate(6, rng);
    const double base = proximity(it);
    Iterate scaled = it;
    const double t = 3.7;
    scaled.y *= t;
    scaled.z *= t;
    scaled.lambda *= t;
    scaled.gamma *= t;
    scaled.mu = duality_gap(scaled);
    EXPECT_NEAR(scaled.mu, t * t * it.mu, 1e-10 * scaled.mu);
    EXPECT_NEAR(proximity(scaled), base, 1e-12);
  }
}

TEST(KktResiduals, ExactPointIsZero) {
  const BoxQP qp = make_box_qp(Matrix::Identity(2, 2), Vector::Zero(2));
  Iterate it = ones_iterate(2);
  it.lambda.setZero();
  it.gamma.setZero();
  const Residuals r = kkt_residuals(qp, it);
  EXPECT_EQ(r.r_x.norm(), 0.0);
  EXPECT_EQ(r.r_y.norm(), 0.0);
  EXPECT_EQ(r.r_z.norm(), 0.0);
}

TEST(KktResiduals, InitialPointIsFeasible) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const BoxQP qp = random_box_qp(6, rng);
    const Residuals r = kkt_residuals(qp, initial_point(qp));
    EXPECT_LE(r.r_x.norm(), 1e-12);
    EXPECT_EQ(r.r_y.norm(), 0.0);
    EXPECT_EQ(r.r_z.norm(), 0.0);
  }
}

TEST(KktResiduals, HandValue) {
  const Index n = 3;
  const BoxQP qp = make_box_qp(Matrix::Identity(n, n), Vector::Ones(n));
  const Iterate it = ones_iterate(n);
  const Residuals r = kkt_residuals(qp, it);
  EXPECT_EQ(r.r_x, Vector::Ones(n));
  EXPECT_EQ(r.r_y.norm(), 0.0);
  EXPECT_EQ(r.r_z.norm(), 0.0);
}

TEST(TerminationMeasure, ZeroAtExactSolution) {
  const BoxQP qp = make_box_qp(Matrix::Identity(2, 2), Vector::Zero(2));
  Iterate it = ones_iterate(2);
  it.lambda.setZero();
  it.gamma.setZero();
  it.mu = 0.0;
  EXPECT_EQ(termination_measure(qp, it), 0.0);
}

TEST(TerminationMeasure, InitialPointZeroC) {
  const BoxQP qp = make_box_qp(Matrix::Identity(1, 1), Vector::Zero(1));
  EXPECT_NEAR(termination_measure(qp, initial_point(qp)), 4.0, 1e-12);
}

TEST(TerminationMeasure, ScaledGapTerm) {
  // Feasible iterate, zero residuals, quadratic form x'Hx + c'x = 10:
  // kappa reduces to mu / 10.
  Matrix H(1, 1);
  H << 8.0;
  Vector c(1);
  c << 16.0;
  const BoxQP qp = make_box_qp(H, c);
  Iterate it;
  it.x = Vector::Constant(1, 0.5);
  it.y = Vector::Constant(1, 0.5);
  it.z = Vector::Constant(1, 1.5);
  it.lambda = Vector::Constant(1, 1.0);
  it.gamma = Vector::Constant(1, 21.0);
  it.mu = 1e-9;
  EXPECT_LE(kkt_residuals(qp, it).r_x.norm(), 1e-14);
  EXPECT_NEAR(termination_measure(qp, it), 1e-10, 1e-22);
}

TEST(InitialPoint, HandValues) {
  Matrix H = Matrix::Identity(2, 2);
  Vector c(2);
  c << 3.0, 4.0;
  const BoxQP qp = make_box_qp(H, c);
  const Iterate it = initial_point(qp);
  EXPECT_DOUBLE_EQ(it.lambda[0], 102.5);
  EXPECT_DOUBLE_EQ(it.lambda[1], 102.0);
  EXPECT_DOUBLE_EQ(it.gamma[0], 105.5);
  EXPECT_DOUBLE_EQ(it.gamma[1], 106.0);
  EXPECT_DOUBLE_EQ(it.mu, 104.0);
}

TEST(InitialPoint, AlwaysInNeighborhood) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dim(1, 200);
  std::uniform_real_distribution<double> scale(0.1, 50.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = dim(rng);
    std::uniform_real_distribution<double> entry(-scale(rng), scale(rng));
    Vector c(n);
    for (Index i = 0; i < n; ++i) c[i] = entry(rng);
    const BoxQP qp = make_box_qp(Matrix::Identity(n, n), c);
    const Iterate it = initial_point(qp);
    ASSERT_TRUE(strictly_interior(it));
    ASSERT_LE(proximity(it), 0.19);
  }
}

TEST(Iterate, SlackIdentitiesAtInitialPoint) {
  std::mt19937 rng(5);
  const BoxQP qp = random_box_qp(8, rng);
  const Iterate it = initial_point(qp);
  EXPECT_LE((it.x + it.y - Vector::Ones(8)).lpNorm<Eigen::Infinity>(), 1e-10);
  EXPECT_LE((it.x - it.z + Vector::Ones(8)).lpNorm<Eigen::Infinity>(), 1e-10);
}

}  // namespace
}  // namespace arcqp
