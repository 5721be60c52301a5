#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "spdcone/sym_matrix.hpp"

namespace spdcone {

struct LanczosOptions {
  double tol = 1e-10;
  int max_iter = 5000;
  std::uint64_t seed = 0x5eed;
  Index basis_size = 40;  ///< restart length
  Index keep = 8;         ///< Ritz vectors retained across a restart
};

struct LanczosResult {
  double value = 0.0;
  Vector vector;  ///< unit Ritz vector
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

/// Largest eigenpair of a symmetric operator by thick-restart Lanczos with full
/// reorthogonalization. `apply(v)` returns A v. `residual(theta, u)` returns the
/// caller's backward-error measure for the Ritz pair; the iteration stops once
/// it is at most `opts.tol`. Only basis_size + 1 vectors of length n are held.
template <class Apply, class Residual>
LanczosResult lanczos_largest(Index n, Apply&& apply, Residual&& residual, const LanczosOptions& opts) {
  const Index m = std::min<Index>(n, std::max<Index>(opts.basis_size, 2));
  const Index keep = std::clamp<Index>(opts.keep, 1, std::max<Index>(m - 1, 1));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  DenseMatrix V(n, m + 1);
  DenseMatrix T = DenseMatrix::Zero(m + 1, m + 1);

  auto random_orthogonal_to = [&](Index count) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = unif(rng);
    for (int pass = 0; pass < 2 && count > 0; ++pass) v -= V.leftCols(count) * (V.leftCols(count).transpose() * v);
    return Vector(v / v.norm());
  };

  V.col(0) = random_orthogonal_to(0);
  Index cur = 1;
  LanczosResult best;
  int its = 0;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> ritz;

  LanczosResult last;
  auto check = [&](double theta, const Vector& s) {
    Vector u = V.leftCols(cur) * s;
    u.normalize();
    const double r = residual(theta, u);
    last.value = theta;
    last.vector = u;
    last.residual = r;
    if (r < best.residual || !std::isfinite(best.residual)) {
      best.value = theta;
      best.vector = std::move(u);
      best.residual = r;
    }
    return r <= opts.tol;
  };
  // A pair can pass the backward-error test while a close neighbour still
  // contaminates the Ritz value, so keep going until the Ritz estimate is
  // well below tol (bounded number of extra steps).
  int certified_at = -1;

  while (true) {
    const Index j = cur - 1;
    Vector w = apply(Vector(V.col(j)));
    ++its;
    Vector h = V.leftCols(cur).transpose() * w;
    w -= V.leftCols(cur) * h;
    Vector h2 = V.leftCols(cur).transpose() * w;
    w -= V.leftCols(cur) * h2;
    h += h2;
    T.block(0, j, cur, 1) = h;
    T.block(j, 0, 1, cur) = h.transpose();
    const double b = w.norm();

    ritz.compute(T.topLeftCorner(cur, cur));
    const double theta = ritz.eigenvalues()(cur - 1);
    const Vector s = ritz.eigenvectors().col(cur - 1);
    const double scale = std::max(std::abs(theta), std::numeric_limits<double>::min());
    const bool exhausted = cur == n;
    const bool invariant = b <= 1e-14 * std::max(scale, T.topLeftCorner(cur, cur).norm());
    const double estimate = std::abs(b * s(cur - 1));

    if (exhausted || invariant || estimate <= opts.tol * scale) {
      if (check(theta, s)) {
        if (certified_at < 0) certified_at = its;
        const bool tight = estimate <= 1e-2 * opts.tol * scale;
        if (exhausted || invariant || tight || its - certified_at >= 2 * m || its >= opts.max_iter) {
          last.iterations = its;
          last.converged = true;
          return last;
        }
      }
    }
    if (its >= opts.max_iter) break;
    if (exhausted) {
      // Full space spanned but the residual target was missed: restart from
      // the best Ritz vector.
      V.col(0) = best.vector.size() ? best.vector : Vector(V.leftCols(cur) * s);
      V.col(0).normalize();
      T.setZero();
      cur = 1;
      continue;
    }
    if (invariant) {
      V.col(cur) = random_orthogonal_to(cur);
      T(cur, j) = T(j, cur) = 0.0;
      ++cur;
      continue;
    }
    if (cur == m) {
      const DenseMatrix S = ritz.eigenvectors().rightCols(keep);
      const Vector thetas = ritz.eigenvalues().tail(keep);
      const DenseMatrix kept = V.leftCols(m) * S;
      V.leftCols(keep) = kept;
      V.col(keep) = w / b;
      T.setZero();
      for (Index i = 0; i < keep; ++i) {
        T(i, i) = thetas(i);
        T(keep, i) = T(i, keep) = b * S(m - 1, i);
      }
      cur = keep + 1;
      continue;
    }
    V.col(cur) = w / b;
    T(cur, j) = T(j, cur) = b;
    ++cur;
  }

  if (!best.vector.size()) {
    ritz.compute(T.topLeftCorner(cur, cur));
    check(ritz.eigenvalues()(cur - 1), ritz.eigenvectors().col(cur - 1));
  }
  best.iterations = its;
  best.converged = false;
  return best;
}

}  // namespace spdcone
