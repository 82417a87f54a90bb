#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "slamobs/pwcs.hpp"
#include "slamobs/slam_model.hpp"
#include "test_support.hpp"

namespace slamobs {
namespace {

Vec3 random_vec(std::mt19937_64& rng, double scale = 10.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return Vec3(d(rng), d(rng), d(rng));
}

Matrix random_low_rank(std::mt19937_64& rng, int rows, int cols, int rank) {
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix a(rows, rank), b(rank, cols);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = d(rng);
  for (int i = 0; i < b.size(); ++i) b.data()[i] = d(rng);
  return a * b;
}

TEST(Skew, MatchesCrossProduct) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = random_vec(rng), w = random_vec(rng);
    EXPECT_LE((skew(v) * w - v.cross(w)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(skew(v).transpose() == -skew(v));
  }
}

TEST(Skew, ZeroVectorGivesZeroMatrix) { EXPECT_TRUE(skew(Vec3::Zero()).isZero(0.0)); }

TEST(Skew, RejectsNonFinite) {
  EXPECT_THROW(skew(Vec3(std::nan(""), 0, 0)), std::invalid_argument);
}

TEST(Lom, ScalarIntegratorPair) {
  // x1' = x2, y = x1: [H; HF] = I.
  Matrix f(2, 2), h(1, 2);
  f << 0, 1, 0, 0;
  h << 1, 0;
  const Matrix q = lom({f, h, 1.0}, 1);
  EXPECT_TRUE(q.isApprox(Matrix::Identity(2, 2)));
  EXPECT_EQ(numerical_rank(q), 2);
}

TEST(Lom, ZeroObservationHasRankZero) {
  const Matrix q = lom({Matrix::Zero(3, 3), Matrix::Zero(2, 3), 1.0});
  EXPECT_EQ(numerical_rank(q), 0);
  EXPECT_EQ(null_space(q).dim(), 3);
}

TEST(Lom, RejectsMismatchedDimensions) {
  EXPECT_THROW(lom({Matrix::Zero(3, 3), Matrix::Zero(2, 4), 1.0}), std::invalid_argument);
  EXPECT_THROW(lom({Matrix::Zero(3, 2), Matrix::Zero(2, 2), 1.0}), std::invalid_argument);
  EXPECT_THROW(lom({Matrix::Zero(2, 2), Matrix::Zero(1, 2), 0.0}), std::invalid_argument);
  EXPECT_THROW(lom({Matrix::Zero(2, 2), Matrix::Zero(1, 2), 1.0}, 0), std::invalid_argument);
}

TEST(Lom, MatchesOracleOnInsStripe) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 f = random_vec(rng), r = random_vec(rng, 100.0);
    oracle::Segment s{1.0, test::v3(f), {1}, {test::v3(r)}};
    const Matrix expected = test::to_eigen(oracle::lom(oracle::aug_f(s.force, 1), oracle::aug_h(s, 1), 2));
    const Matrix got = lom({augmented_dynamics(f, 1), augmented_observation({{0, r}}, 1), 1.0});
    EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Nilpotency, InsDynamicsIsIndexThree) {
  EXPECT_EQ(nilpotency_index(ins_error_f(Vec3(0.0, 0.1, 9.81))), 3);
  EXPECT_EQ(nilpotency_index(ins_error_f(Vec3::Zero())), 2);
  EXPECT_EQ(nilpotency_index(Matrix::Identity(3, 3)), 0);
}

TEST(StateTransition, FirstOrderIsIdentityPlusFDelta) {
  const Matrix f = ins_error_f(Vec3(1.0, 2.0, 3.0));
  EXPECT_TRUE(state_transition(f, 0.5, Expansion::first_order) == Matrix::Identity(9, 9) + f * 0.5);
}

TEST(StateTransition, ExactMatchesOracleSeries) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 f = random_vec(rng);
    const double dt = std::uniform_real_distribution<double>(0.01, 50.0)(rng);
    const Matrix expected = test::to_eigen(oracle::vehicle_transition(oracle::ins_f(test::v3(f)), dt, false));
    const Matrix got = state_transition(ins_error_f(f), dt, Expansion::exact);
    EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  }
}

TEST(StateTransition, ExactHasUnitDeterminantAndInverts) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix f = ins_error_f(random_vec(rng));
    const double dt = std::uniform_real_distribution<double>(0.01, 10.0)(rng);
    const Matrix phi = state_transition(f, dt, Expansion::exact);
    EXPECT_NEAR(phi.determinant(), std::exp(f.trace() * dt), 1e-9);
    EXPECT_LE((phi * phi.inverse() - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff(), 1e-10);
    // The inverse is the transition over -dt, which the terminated series gives exactly.
    const Matrix back = Matrix::Identity(9, 9) - f * dt + 0.5 * f * f * dt * dt;
    EXPECT_LE((phi * back - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(StateTransition, NonNilpotentFallsBackToMatrixExponential) {
  Matrix f(2, 2);
  f << 0, 1, -1, 0;  // rotation generator
  const Matrix phi = state_transition(f, 0.3, Expansion::exact);
  EXPECT_NEAR(phi(0, 0), std::cos(0.3), 1e-12);
  EXPECT_NEAR(phi(0, 1), std::sin(0.3), 1e-12);
}

TEST(StateTransition, RejectsBadInput) {
  EXPECT_THROW(state_transition(Matrix::Zero(2, 3), 1.0, Expansion::exact), std::invalid_argument);
  EXPECT_THROW(state_transition(Matrix::Zero(2, 2), 0.0, Expansion::exact), std::invalid_argument);
  EXPECT_THROW(state_transition(Matrix::Zero(2, 2), -1.0, Expansion::exact), std::invalid_argument);
}

TEST(Tom, SingleStripeIsBitIdenticalToLom) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const PwcsStripe s{augmented_dynamics(random_vec(rng), 2),
                       augmented_observation({{0, random_vec(rng, 100)}, {1, random_vec(rng, 100)}}, 2),
                       3.0};
    const Matrix a = tom(std::vector<PwcsStripe>{s});
    const Matrix b = lom(s);
    ASSERT_EQ(a.rows(), b.rows());
    EXPECT_TRUE(a == b);
  }
}

TEST(Tom, RejectsEmptyAndMixedDimensions) {
  EXPECT_THROW(tom(std::vector<PwcsStripe>{}), std::invalid_argument);
  const PwcsStripe a{Matrix::Zero(2, 2), Matrix::Identity(2, 2), 1.0};
  const PwcsStripe b{Matrix::Zero(3, 3), Matrix::Identity(3, 3), 1.0};
  EXPECT_THROW(tom(std::vector<PwcsStripe>{a, b}), std::invalid_argument);
}

TEST(Tom, SecondStripeIsRightMultipliedByTransition) {
  Matrix f(2, 2), h(1, 2);
  f << 0, 1, 0, 0;
  h << 1, 0;
  const PwcsStripe s{f, h, 2.0};
  const Matrix q = tom(std::vector<PwcsStripe>{s, s}, 1);
  ASSERT_EQ(q.rows(), 4);
  Matrix t(2, 2);
  t << 1, 2, 0, 1;
  EXPECT_TRUE(q.bottomRows(2).isApprox(lom(s, 1) * t));
}

TEST(Rank, KnownValues) {
  EXPECT_EQ(numerical_rank(Matrix::Identity(4, 4)), 4);
  EXPECT_EQ(numerical_rank(Matrix::Zero(3, 5)), 0);
  EXPECT_EQ(numerical_rank(Matrix(0, 5)), 0);
  Matrix m(2, 2);
  m << 1, 0, 0, 1e-12;
  EXPECT_EQ(numerical_rank(m), 1);
  EXPECT_EQ(numerical_rank(m, 1e-13), 2);
  EXPECT_THROW(numerical_rank(m, 0.0), std::invalid_argument);
}

TEST(Rank, PlusNullityEqualsColumns) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = std::uniform_int_distribution<int>(1, 20)(rng);
    const int cols = std::uniform_int_distribution<int>(1, 15)(rng);
    const int r = std::uniform_int_distribution<int>(0, std::min(rows, cols))(rng);
    const Matrix m = r == 0 ? Matrix::Zero(rows, cols) : random_low_rank(rng, rows, cols, r);
    const int rank = numerical_rank(m);
    EXPECT_EQ(rank, r);
    EXPECT_EQ(rank + null_space(m).dim(), cols);
  }
}

TEST(Rank, InvariantUnderRowPermutationAndScaling) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  std::bernoulli_distribution sign(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = std::uniform_int_distribution<int>(2, 18)(rng);
    const int cols = std::uniform_int_distribution<int>(2, 15)(rng);
    const int r = std::uniform_int_distribution<int>(1, std::min(rows, cols))(rng);
    const Matrix m = random_low_rank(rng, rows, cols, r);
    std::vector<int> perm(static_cast<std::size_t>(rows));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix p(rows, cols);
    for (int i = 0; i < rows; ++i) {
      p.row(i) = m.row(perm[static_cast<std::size_t>(i)]) * (sign(rng) ? 1.0 : -1.0) * scale(rng);
    }
    EXPECT_EQ(numerical_rank(p), numerical_rank(m));
  }
}

TEST(NullSpace, IsOrthonormalAndAnnihilates) {
  std::mt19937_64 rng(8);
  const Matrix m = random_low_rank(rng, 10, 8, 5);
  const NullSpaceBasis n = null_space(m);
  ASSERT_EQ(n.dim(), 3);
  EXPECT_LE((m * n.vectors).norm(), 1e-10 * m.norm());
  EXPECT_LE((n.vectors.transpose() * n.vectors - Matrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_EQ(n.vector(0).size(), 8);
}

TEST(NullSpace, EmptyMatrixHasFullKernel) {
  EXPECT_EQ(null_space(Matrix(0, 4)).dim(), 4);
  EXPECT_EQ(null_space(Matrix::Identity(4, 4)).dim(), 0);
}

TEST(Functional, FullColumnRankObservesEverything) {
  std::mt19937_64 rng(9);
  const Matrix m = random_low_rank(rng, 6, 4, 4);
  Vector w(4);
  w << 1, -2, 3, 0.5;
  EXPECT_TRUE(is_functional_observable(m, w));
}

TEST(Functional, ZeroMatrixObservesNothing) {
  Vector w = Vector::Unit(3, 1);
  EXPECT_FALSE(is_functional_observable(Matrix::Zero(2, 3), w));
}

TEST(Functional, EveryRowIsObservable) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_low_rank(rng, 8, 10, 4);
    const NullSpaceBasis n = null_space(m);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      EXPECT_TRUE(is_functional_observable(n, m.row(i).transpose()));
    }
  }
}

TEST(Functional, LengthMismatchThrows) {
  EXPECT_THROW(is_functional_observable(Matrix::Identity(3, 3), Vector::Ones(2)), std::invalid_argument);
}

TEST(Functional, CaseTwoRelativePositionAndAbsolutePosition) {
  const AugmentedSystem sys = augment(case_scenario(2));
  const Matrix q = tom(sys.stripes);
  EXPECT_TRUE(is_functional_observable(q, test::axis_functional(15, kPosIdx, feature_col(1))));
  EXPECT_FALSE(is_functional_observable(q, test::axis_functional(15, kPosIdx)));
}

}  // namespace
}  // namespace slamobs
