#include <gtest/gtest.h>

#include "alloc_guard.hpp"
#include "bench.hpp"
#include "support.hpp"

using namespace spdcone;

namespace {

// A dense n x n double matrix needs 8 n^2 bytes; nothing close may be requested.
std::size_t cap_for(Index n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

}  // namespace

TEST(Allocation, GuardSeesDenseMatrices) {
  std::size_t peak = 0;
  {
    alloc_guard::Scope scope;
    DenseMatrix m = DenseMatrix::Constant(300, 300, 1.0);
    EXPECT_EQ(m(1, 1), 1.0);
    peak = scope.peak();
  }
  EXPECT_GE(peak, 8u * 300 * 300);
}

TEST(Allocation, SparseExtremesAtTwoThousand) {
  Rng rng(2000);
  const SpdMatrix x = random_sparse_spd(2000, 0.01, rng), y = random_sparse_spd(2000, 0.01, rng);
  std::size_t peak = 0;
  PencilExtremes e;
  {
    alloc_guard::Scope scope;
    e = extreme_pair(x, y);
    peak = scope.peak();
  }
  EXPECT_EQ(e.backend, Backend::Iterative);
  EXPECT_LE(e.residual_alpha, 1e-10);
  EXPECT_LE(e.residual_beta, 1e-10);
  EXPECT_LT(peak, cap_for(2000));
}

TEST(Allocation, BenchMeanSuiteAtTwoThousand) {
  bench::BenchConfig cfg;
  cfg.suite = "mean";
  cfg.sizes = {2000};
  cfg.density = 0.01;
  cfg.seed = 7;
  std::size_t peak = 0;
  std::vector<bench::BenchRow> rows;
  {
    alloc_guard::Scope scope;
    rows = bench::run_bench(cfg);
    peak = scope.peak();
  }
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].op, "inductive_mean");
  EXPECT_LE(rows[0].value, cfg.mean.residual_tol);
  EXPECT_LT(peak, cap_for(2000));
}
