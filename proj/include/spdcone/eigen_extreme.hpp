#pragma once

#include <cmath>
#include <utility>

#include "spdcone/lanczos.hpp"
#include "spdcone/options.hpp"
#include "spdcone/spd_matrix.hpp"

namespace spdcone {

/// Generalized eigenpair Y v = value X v of the pencil (Y, X), with v
/// normalized so that v^T X v = 1.
struct PencilEigenpair {
  double value = 0.0;
  Vector vector;
  int iterations = 0;
  /// ||Y v - value X v|| / (||Y v|| + |value| ||X v||)
  double residual = 0.0;
  Backend backend = Backend::Dense;
};

/// alpha = lambda_min(Y X^{-1}) and beta = lambda_max(Y X^{-1}).
struct PencilExtremes {
  double alpha = 1.0;
  double beta = 1.0;
  int iterations_alpha = 0;
  int iterations_beta = 0;
  double residual_alpha = 0.0;
  double residual_beta = 0.0;
  Backend backend = Backend::Dense;
};

/// Backward-error residual of (lambda, v) for the pencil (Y, X).
inline double pencil_residual(const SpdMatrix& y, const SpdMatrix& x, double lambda, const Vector& v) {
  const Vector yv = y.multiply(v);
  const Vector xv = x.multiply(v);
  const double denom = yv.norm() + std::abs(lambda) * xv.norm();
  if (denom == 0.0) return 0.0;
  return (yv - lambda * xv).norm() / denom;
}

/// Backend `auto` resolves to dense for small, dense-ish pencils.
inline Backend resolve_backend(const SpdMatrix& y, const SpdMatrix& x, const EigenOptions& opts) {
  if (opts.backend != Backend::Auto) return opts.backend;
  const double density = std::max(y.matrix().density(), x.matrix().density());
  return (x.size() <= opts.dense_ceiling && density > 0.25) ? Backend::Dense : Backend::Iterative;
}

namespace detail {

inline PencilEigenpair largest_dense(const SpdMatrix& y, const SpdMatrix& x, const EigenOptions& opts) {
  const auto sys = whitened_eigensystem(x, y, opts.dense_ceiling);
  const Index n = x.size();
  PencilEigenpair out;
  out.value = sys.values(n - 1);
  out.vector = x.factor().solve_upper(sys.vectors.col(n - 1));
  out.residual = pencil_residual(y, x, out.value, out.vector);
  out.backend = Backend::Dense;
  return out;
}

inline PencilEigenpair largest_iterative(const SpdMatrix& y, const SpdMatrix& x, const EigenOptions& opts) {
  const CholeskyFactor& g = x.factor();
  auto apply = [&](const Vector& u) { return g.solve_lower(y.multiply(g.solve_upper(u))); };
  auto residual = [&](double theta, const Vector& u) { return pencil_residual(y, x, theta, g.solve_upper(u)); };
  LanczosOptions lo;
  lo.tol = opts.tol;
  lo.max_iter = opts.max_iter;
  lo.seed = opts.seed;
  const LanczosResult r = lanczos_largest(x.size(), apply, residual, lo);
  if (opts.tally) opts.tally->record(r.iterations);
  if (!r.converged) throw EigenNoConvergence(r.value, r.residual, r.iterations);
  PencilEigenpair out;
  out.value = r.value;
  out.vector = g.solve_upper(r.vector);
  out.iterations = r.iterations;
  out.residual = r.residual;
  out.backend = Backend::Iterative;
  return out;
}

}  // namespace detail

/// lambda_max(Y X^{-1}) with its generalized eigenvector. The iterative backend
/// runs Lanczos on u -> G^{-1} Y G^{-T} u (X = G G^T) using triangular solves
/// and matrix-vector products only.
inline PencilEigenpair lambda_max_pencil(const SpdMatrix& y, const SpdMatrix& x, const EigenOptions& opts = {}) {
  opts.validate();
  require_same_size(x, y);
  return resolve_backend(y, x, opts) == Backend::Dense ? detail::largest_dense(y, x, opts)
                                                       : detail::largest_iterative(y, x, opts);
}

/// lambda_min(Y X^{-1}), computed as 1 / lambda_max(X Y^{-1}).
inline PencilEigenpair lambda_min_pencil(const SpdMatrix& y, const SpdMatrix& x, const EigenOptions& opts = {}) {
  try {
    PencilEigenpair inv = lambda_max_pencil(x, y, opts);
    // X v = mu Y v  <=>  Y v = (1/mu) X v; rescale v to v^T X v = 1.
    inv.value = 1.0 / inv.value;
    inv.vector *= std::sqrt(inv.value);
    return inv;
  } catch (const EigenNoConvergence& e) {
    throw EigenNoConvergence(1.0 / e.estimate(), e.residual(), e.iterations());
  }
}

/// Extreme generalized eigenvalues of Y X^{-1}.
inline PencilExtremes extreme_pair(const SpdMatrix& x, const SpdMatrix& y, const EigenOptions& opts = {}) {
  opts.validate();
  require_same_size(x, y);
  EigenOptions beta_opts = opts;
  beta_opts.backend = resolve_backend(y, x, opts);
  EigenOptions alpha_opts = beta_opts;
  alpha_opts.seed = opts.seed ^ 0x9e3779b97f4a7c15ULL;
  const PencilEigenpair b = lambda_max_pencil(y, x, beta_opts);
  const PencilEigenpair a = lambda_min_pencil(y, x, alpha_opts);
  PencilExtremes out;
  out.alpha = a.value;
  out.beta = b.value;
  if (out.alpha > out.beta) out.alpha = out.beta = std::sqrt(out.alpha * out.beta);
  out.iterations_alpha = a.iterations;
  out.iterations_beta = b.iterations;
  out.residual_alpha = a.residual;
  out.residual_beta = b.residual;
  out.backend = beta_opts.backend;
  return out;
}

}  // namespace spdcone
