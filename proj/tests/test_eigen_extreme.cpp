#include <gtest/gtest.h>

#include "support.hpp"

using namespace spdcone;
using namespace spdcone::test;

namespace {

EigenOptions with_backend(Backend b) {
  EigenOptions o;
  o.backend = b;
  return o;
}

SpdMatrix diag(std::initializer_list<double> v, bool sparse = false) {
  Vector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double e : v) d(i++) = e;
  return make_spd(SymMatrix::diagonal(d, sparse));
}

}  // namespace

class BothBackends : public ::testing::TestWithParam<Backend> {};

TEST_P(BothBackends, DiagonalAgainstIdentity) {
  const EigenOptions o = with_backend(GetParam());
  const SpdMatrix i3 = make_spd(SymMatrix::identity(3)), y = diag({9, 4, 1});
  EXPECT_NEAR(lambda_max_pencil(y, i3, o).value, 9.0, 1e-9 * 9);
  EXPECT_NEAR(lambda_min_pencil(y, i3, o).value, 1.0, 1e-9);
  const PencilExtremes e = extreme_pair(i3, y, o);
  EXPECT_NEAR(e.alpha, 1.0, 1e-9);
  EXPECT_NEAR(e.beta, 9.0, 1e-9 * 9);
  EXPECT_EQ(e.backend, GetParam());
}

TEST_P(BothBackends, ScalarMultipleCollapses) {
  const EigenOptions o = with_backend(GetParam());
  Rng rng(3);
  for (double c : {1e-3, 0.7, 5.0, 1e4}) {
    const SpdMatrix x = random_spd(8, 3.0, rng);
    const SpdMatrix y = x.scaled(c);
    EXPECT_NEAR(lambda_max_pencil(y, x, o).value, c, 1e-10 * c);
    EXPECT_NEAR(lambda_min_pencil(y, x, o).value, c, 1e-10 * c);
  }
}

TEST_P(BothBackends, MatrixAgainstItself) {
  Rng rng(4);
  const SpdMatrix x = random_spd(10, 2.0, rng);
  const PencilExtremes e = extreme_pair(x, x, with_backend(GetParam()));
  EXPECT_NEAR(e.alpha, 1.0, 1e-10);
  EXPECT_NEAR(e.beta, 1.0, 1e-10);
  EXPECT_LE(e.alpha, e.beta);
}

TEST_P(BothBackends, TwoByTwoReciprocalSpectrum) {
  DenseMatrix m(2, 2);
  m << 2, 1, 1, 2;
  const PencilExtremes e = extreme_pair(make_spd(m), make_spd(SymMatrix::identity(2)), with_backend(GetParam()));
  EXPECT_NEAR(e.alpha, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(e.beta, 1.0, 1e-12);
}

TEST_P(BothBackends, ResidualMeetsToleranceAndVectorIsEigenvector) {
  const EigenOptions o = with_backend(GetParam());
  Rng rng(5);
  const SpdMatrix x = random_spd(30, 3.0, rng), y = random_spd(30, 3.0, rng);
  for (const PencilEigenpair& p : {lambda_max_pencil(y, x, o), lambda_min_pencil(y, x, o)}) {
    EXPECT_LE(p.residual, o.tol);
    EXPECT_NEAR(pencil_residual(y, x, p.value, p.vector), p.residual, 1e-12);
    EXPECT_NEAR(p.vector.dot(x.multiply(p.vector)), 1.0, 1e-8);
  }
}

TEST_P(BothBackends, InversionDuality) {
  const EigenOptions o = with_backend(GetParam());
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix x = random_spd(12, 3.0, rng), y = random_spd(12, 3.0, rng);
    const PencilExtremes xy = extreme_pair(x, y, o), yx = extreme_pair(y, x, o);
    EXPECT_NEAR(xy.alpha * yx.beta, 1.0, 1e-9);
    EXPECT_NEAR(xy.beta * yx.alpha, 1.0, 1e-9);
  }
}

TEST_P(BothBackends, CongruenceInvariance) {
  const EigenOptions o = with_backend(GetParam());
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 3 + trial;
    const SpdMatrix x = random_spd(n, 2.0, rng), y = random_spd(n, 2.0, rng);
    const DenseMatrix a = random_invertible(n, 50.0, rng);
    const PencilExtremes e = extreme_pair(x, y, o), ec = extreme_pair(congruence(a, x), congruence(a, y), o);
    EXPECT_NEAR(ec.alpha, e.alpha, 1e-8 * e.alpha);
    EXPECT_NEAR(ec.beta, e.beta, 1e-8 * e.beta);
  }
}

TEST_P(BothBackends, BoundedByLoewnerMultiple) {
  const EigenOptions o = with_backend(GetParam());
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix x = random_spd(9, 2.0, rng), y = random_spd(9, 2.0, rng);
    const double c = 1.5 * oracle_beta(x, y);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(c * x.to_dense() - y.to_dense(), Eigen::EigenvaluesOnly);
    ASSERT_GE(es.eigenvalues().minCoeff(), 0.0);
    EXPECT_LE(extreme_pair(x, y, o).beta, c + 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Backends, BothBackends, ::testing::Values(Backend::Dense, Backend::Iterative),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(EigenExtreme, SparseTwoHundredMatchesDenseOracle) {
  Rng rng(9);
  const SpdMatrix x = random_sparse_spd(200, 0.03, rng), y = random_sparse_spd(200, 0.03, rng);
  const PencilExtremes e = extreme_pair(x, y, with_backend(Backend::Iterative));
  const Spectrum s = spectrum_dense(x, y);
  EXPECT_NEAR(e.alpha, s.min(), 1e-8 * s.min());
  EXPECT_NEAR(e.beta, s.max(), 1e-8 * s.max());
}

TEST(EigenExtreme, IterativeMatchesDenseAcrossSizes) {
  Rng rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + trial;
    const SpdMatrix x = random_spd(n, 4.0, rng), y = random_spd(n, 4.0, rng);
    const PencilExtremes it = extreme_pair(x, y, with_backend(Backend::Iterative));
    const PencilExtremes de = extreme_pair(x, y, with_backend(Backend::Dense));
    EXPECT_NEAR(it.alpha, de.alpha, 1e-8 * de.alpha) << "n=" << n;
    EXPECT_NEAR(it.beta, de.beta, 1e-8 * de.beta) << "n=" << n;
  }
}

TEST(EigenExtreme, DenseMatchesIndependentOracle) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const SpdMatrix x = random_spd(15, 3.0, rng), y = random_spd(15, 3.0, rng);
    const PencilExtremes e = extreme_pair(x, y, with_backend(Backend::Dense));
    EXPECT_NEAR(e.alpha, oracle_alpha(x, y), 1e-10 * e.alpha);
    EXPECT_NEAR(e.beta, oracle_beta(x, y), 1e-10 * e.beta);
  }
}

TEST(EigenExtreme, AutoBackendSelection) {
  Rng rng(13);
  const SpdMatrix dense = random_spd(20, 1.0, rng);
  const SpdMatrix sparse = random_sparse_spd(100, 0.02, rng);
  EXPECT_EQ(resolve_backend(dense, dense, {}), Backend::Dense);
  EXPECT_EQ(resolve_backend(sparse, sparse, {}), Backend::Iterative);
  EigenOptions low;
  low.dense_ceiling = 10;
  EXPECT_EQ(resolve_backend(dense, dense, low), Backend::Iterative);
}

TEST(EigenExtreme, SeedDeterminesIterationCounts) {
  Rng rng(14);
  const SpdMatrix x = random_sparse_spd(300, 0.02, rng), y = random_sparse_spd(300, 0.02, rng);
  EigenOptions o = with_backend(Backend::Iterative);
  const PencilExtremes a = extreme_pair(x, y, o), b = extreme_pair(x, y, o);
  EXPECT_EQ(a.iterations_alpha, b.iterations_alpha);
  EXPECT_EQ(a.iterations_beta, b.iterations_beta);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.beta, b.beta);
}

TEST(EigenExtreme, TallyAccumulatesIterativeWork) {
  Rng rng(15);
  const SpdMatrix x = random_sparse_spd(100, 0.05, rng), y = random_sparse_spd(100, 0.05, rng);
  EigenOptions o = with_backend(Backend::Iterative);
  o.tally = std::make_shared<IterationTally>();
  const PencilExtremes e = extreme_pair(x, y, o);
  EXPECT_EQ(o.tally->solves.load(), 2);
  EXPECT_EQ(o.tally->iterations.load(), e.iterations_alpha + e.iterations_beta);
}

TEST(EigenExtreme, IterationCapRaisesNoConvergenceWithEstimate) {
  Rng rng(16);
  const SpdMatrix x = random_spd(200, 6.0, rng), y = random_spd(200, 6.0, rng);
  EigenOptions o = with_backend(Backend::Iterative);
  o.max_iter = 3;
  o.tol = 1e-14;
  try {
    lambda_max_pencil(y, x, o);
    FAIL();
  } catch (const EigenNoConvergence& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
    EXPECT_GT(e.estimate(), 0.0);
    EXPECT_LE(e.estimate(), oracle_beta(x, y) * (1 + 1e-12));
    EXPECT_GT(e.residual(), o.tol);
  }
}

TEST(EigenExtreme, InvalidOptions) {
  EigenOptions o;
  o.tol = 0;
  const SpdMatrix i2 = make_spd(SymMatrix::identity(2));
  EXPECT_THROW(extreme_pair(i2, i2, o), Error);
  o.tol = 1e-10;
  o.max_iter = 0;
  EXPECT_THROW(extreme_pair(i2, i2, o), Error);
}

TEST(EigenExtreme, DimensionMismatch) {
  try {
    extreme_pair(make_spd(SymMatrix::identity(2)), make_spd(SymMatrix::identity(3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(EigenExtreme, IllConditionedPencils) {
  Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 10 + trial;
    const double c = 0.5 * std::log(1e8);
    const SpdMatrix x = random_spd(n, c, rng), y = random_spd(n, c, rng);
    EigenOptions o = with_backend(Backend::Iterative);
    o.tol = 1e-8;
    const PencilExtremes it = extreme_pair(x, y, o);
    EXPECT_NEAR(it.alpha, oracle_alpha(x, y), 1e-8 * it.alpha);
    EXPECT_NEAR(it.beta, oracle_beta(x, y), 1e-8 * it.beta);
  }
}

// Condition 1e8 in each matrix puts the backward error out of reach of 1e-10.
TEST(EigenExtreme, ResidualFloorReportsNoConvergence) {
  Rng rng(19);
  const double c = 0.5 * std::log(1e8);
  const SpdMatrix x = random_spd(36, c, rng), y = random_spd(36, c, rng);
  EigenOptions o = with_backend(Backend::Iterative);
  o.max_iter = 300;
  try {
    lambda_max_pencil(y, x, o);
  } catch (const EigenNoConvergence& e) {
    EXPECT_GT(e.residual(), 1e-10);
    EXPECT_LT(e.residual(), 1e-7);
    EXPECT_NEAR(e.estimate(), oracle_beta(x, y), 1e-8 * e.estimate());
  }
}

TEST(EigenExtreme, OneByOne) {
  const PencilExtremes e = extreme_pair(diag({2}), diag({8}), with_backend(Backend::Iterative));
  EXPECT_NEAR(e.alpha, 4.0, 1e-14);
  EXPECT_NEAR(e.beta, 4.0, 1e-14);
}
