#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spdcone/spdcone.hpp"

namespace spdcone::bench {

struct BenchConfig {
  std::string suite = "distance";  ///< distance | geodesic | mean
  std::vector<Index> sizes{64};
  double density = 0.01;
  std::uint64_t seed = 1;
  int points = 3;                  ///< inputs for the mean suite
  long riemannian_max_n = 512;     ///< dense comparisons run only up to this size
  MeanOptions mean;                ///< .eigen carries the eigensolver settings
};

struct BenchRow {
  std::string suite;
  std::string op;
  Index n = 0;
  double density = 0.0;
  std::string backend;
  double wall_ms = 0.0;
  long long eigen_solves = 0;
  long long eigen_iterations = 0;
  Index nnz_in = 0;   ///< structural union of the inputs
  Index nnz_out = 0;  ///< exact nonzeros of the result (0 for scalar outputs)
  double value = 0.0; ///< scalar output (distance) or residual (mean)
};

namespace detail {

template <class F>
BenchRow timed(const BenchConfig& cfg, const std::string& op, Index n, const std::string& backend, F&& body) {
  BenchRow row;
  row.suite = cfg.suite;
  row.op = op;
  row.n = n;
  row.density = cfg.density;
  row.backend = backend;
  auto tally = std::make_shared<IterationTally>();
  EigenOptions eo = cfg.mean.eigen;
  eo.tally = tally;
  const auto t0 = std::chrono::steady_clock::now();
  body(eo, row);
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  row.eigen_solves = tally->solves.load();
  row.eigen_iterations = tally->iterations.load();
  return row;
}

inline Index union_entries(const std::vector<SpdMatrix>& ms) {
  SymMatrix acc = ms.front().matrix();
  for (std::size_t i = 1; i < ms.size(); ++i) acc = linear_combination(1.0, acc, 1.0, ms[i].matrix());
  return acc.stored_entries();
}

}  // namespace detail

/// Wall time and eigensolver work of the extreme-eigenvalue operations against
/// their dense Riemannian counterparts, per problem size. Deterministic in
/// everything but wall time for a fixed seed.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.suite != "distance" && cfg.suite != "geodesic" && cfg.suite != "mean")
    throw Error(ErrorCode::InvalidArgument, "unknown bench suite '" + cfg.suite + "'");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "density must lie in (0,1]");
  std::vector<BenchRow> rows;
  for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
    const Index n = cfg.sizes[s];
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "bench sizes must be >= 2");
    Rng rng(cfg.seed + 7919 * s);
    const int count = cfg.suite == "mean" ? std::max(cfg.points, 2) : 2;
    std::vector<SpdMatrix> inputs;
    for (int i = 0; i < count; ++i) inputs.push_back(random_sparse_spd(n, cfg.density, rng));
    const Index nnz_in = detail::union_entries(inputs);
    const SpdMatrix& x = inputs[0];
    const SpdMatrix& y = inputs[1];
    const std::string backend(to_string(resolve_backend(y, x, cfg.mean.eigen)));
    const bool dense_ok = n <= cfg.riemannian_max_n && n <= cfg.mean.eigen.dense_ceiling;

    if (cfg.suite == "distance") {
      rows.push_back(detail::timed(cfg, "thompson", n, backend, [&](const EigenOptions& eo, BenchRow& r) {
        r.value = thompson_distance(x, y, eo);
      }));
      rows.push_back(detail::timed(cfg, "hilbert", n, backend, [&](const EigenOptions& eo, BenchRow& r) {
        r.value = hilbert_distance(x, y, eo);
      }));
      if (dense_ok)
        rows.push_back(detail::timed(cfg, "riemannian", n, "dense", [&](const EigenOptions& eo, BenchRow& r) {
          r.value = riemannian_distance(x, y, eo.dense_ceiling);
        }));
    } else if (cfg.suite == "geodesic") {
      rows.push_back(detail::timed(cfg, "star_geodesic", n, backend, [&](const EigenOptions& eo, BenchRow& r) {
        r.nnz_out = star_geodesic(x, y, 0.5, eo).nnz();
      }));
      if (dense_ok)
        rows.push_back(detail::timed(cfg, "riemannian_geodesic", n, "dense", [&](const EigenOptions& eo, BenchRow& r) {
          r.nnz_out = riemannian_geodesic(x, y, 0.5, eo.dense_ceiling).nnz();
        }));
    } else {
      rows.push_back(detail::timed(cfg, "inductive_mean", n, backend, [&](const EigenOptions& eo, BenchRow& r) {
        MeanProblem p{inputs, std::nullopt, cfg.mean};
        p.opts.eigen = eo;
        const MeanResult res = inductive_mean(p);
        r.nnz_out = res.mean.nnz();
        r.value = res.residual_norm;
      }));
      if (dense_ok)
        rows.push_back(detail::timed(cfg, "riemannian_midpoint", n, "dense", [&](const EigenOptions& eo, BenchRow& r) {
          r.nnz_out = riemannian_geodesic(x, y, 0.5, eo.dense_ceiling).nnz();
        }));
    }
    for (auto& r : rows)
      if (r.n == n) r.nnz_in = nnz_in;
  }
  return rows;
}

}  // namespace spdcone::bench
