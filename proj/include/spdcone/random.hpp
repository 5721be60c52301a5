#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "spdcone/spd_matrix.hpp"

namespace spdcone {

// Seeded generators for reproducible, conditioning-controlled inputs.

using Rng = std::mt19937_64;

inline DenseMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = g(rng);
  return a;
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian, signs fixed by R).
inline DenseMatrix random_orthogonal(Index n, Rng& rng) {
  Eigen::HouseholderQR<DenseMatrix> qr(random_gaussian(n, n, rng));
  DenseMatrix q = qr.householderQ();
  const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

/// Q diag(exp(u_i)) Q^T with u_i uniform on [-c, c]; condition number <= e^{2c}.
inline SpdMatrix random_spd(Index n, double c, Rng& rng) {
  std::uniform_real_distribution<double> u(-c, c);
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = std::exp(u(rng));
  const DenseMatrix q = random_orthogonal(n, rng);
  return make_spd(SymMatrix::from_lower(q * d.asDiagonal() * q.transpose()));
}

/// Q D Q^T with prescribed eigenvalues.
inline SpdMatrix spd_with_eigenvalues(const Vector& eigenvalues, Rng& rng) {
  const DenseMatrix q = random_orthogonal(eigenvalues.size(), rng);
  return make_spd(SymMatrix::from_lower(q * eigenvalues.asDiagonal() * q.transpose()));
}

/// Q1 diag(s) Q2^T with singular values log-uniform in [1, max_cond].
inline DenseMatrix random_invertible(Index n, double max_cond, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, std::log(max_cond));
  Vector s(n);
  for (Index i = 0; i < n; ++i) s(i) = std::exp(u(rng));
  return random_orthogonal(n, rng) * s.asDiagonal() * random_orthogonal(n, rng).transpose();
}

inline SpdMatrix random_diagonal_spd(Index n, double c, Rng& rng, bool sparse = false) {
  std::uniform_real_distribution<double> u(-c, c);
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = std::exp(u(rng));
  return make_spd(SymMatrix::diagonal(d, sparse));
}

namespace detail {

// Diagonally dominant SPD matrix on the given strictly-lower pattern.
inline SpdMatrix dominant_spd_on(Index n, const std::vector<std::pair<Index, Index>>& offdiag, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<Triplet> t;
  Vector rowsum = Vector::Zero(n);
  for (auto [i, j] : offdiag) {
    const double v = g(rng);
    t.emplace_back(i, j, v);
    rowsum(i) += std::abs(v);
    rowsum(j) += std::abs(v);
  }
  for (Index i = 0; i < n; ++i) t.emplace_back(i, i, rowsum(i) + u(rng));
  return make_spd(n, t);
}

}  // namespace detail

/// Sparse SPD matrix with a random pattern confined to a band of half-width
/// ceil(density * n); each in-band position is occupied with probability 1/2,
/// giving roughly `density` fill. The band keeps Cholesky fill bounded.
inline SpdMatrix random_sparse_spd(Index n, double density, Rng& rng) {
  const Index w = std::max<Index>(1, static_cast<Index>(std::ceil(density * static_cast<double>(n))));
  std::bernoulli_distribution coin(0.5);
  std::vector<std::pair<Index, Index>> off;
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < std::min(n, j + w + 1); ++i)
      if (coin(rng)) off.emplace_back(i, j);
  return detail::dominant_spd_on(n, off, rng);
}

/// Sparse SPD matrix with `offdiag_pairs` strictly-lower entries at uniformly
/// random positions.
inline SpdMatrix random_scattered_spd(Index n, Index offdiag_pairs, Rng& rng) {
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::set<std::pair<Index, Index>> chosen;
  const Index cap = n * (n - 1) / 2;
  while (static_cast<Index>(chosen.size()) < std::min(offdiag_pairs, cap)) {
    Index i = pick(rng), j = pick(rng);
    if (i == j) continue;
    if (i < j) std::swap(i, j);
    chosen.emplace(i, j);
  }
  return detail::dominant_spd_on(n, {chosen.begin(), chosen.end()}, rng);
}

inline SpdMatrix random_tridiagonal_spd(Index n, Rng& rng, bool sparse = true) {
  std::uniform_real_distribution<double> diag(2.0, 4.0), off(-1.0, 1.0);
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    t.emplace_back(i, i, diag(rng));
    if (i + 1 < n) t.emplace_back(i + 1, i, off(rng));
  }
  SymMatrix m = SymMatrix::from_triplets(n, t);
  return make_spd(sparse ? m : m.with_storage(false));
}

/// Symmetric Toeplitz matrix, diagonally dominant hence SPD (dense storage).
inline SpdMatrix random_toeplitz_spd(Index n, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), d(0.5, 2.0);
  Vector r(n);
  double sum = 0.0;
  for (Index k = 1; k < n; ++k) {
    r(k) = u(rng) / static_cast<double>(k);
    sum += std::abs(r(k));
  }
  r(0) = 2.0 * sum + d(rng);
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = r(std::abs(i - j));
  return make_spd(SymMatrix::from_lower(m));
}

/// A pair of sparse n x n SPD matrices with `nnz` nonzeros each (n diagonal
/// entries plus (nnz - n) / 2 mirrored off-diagonal pairs).
inline std::pair<SpdMatrix, SpdMatrix> sparse_interpolation_pair(Index n, Index nnz, Rng& rng) {
  const Index pairs = std::max<Index>(0, (nnz - n) / 2);
  SpdMatrix a = random_scattered_spd(n, pairs, rng);
  SpdMatrix b = random_scattered_spd(n, pairs, rng);
  return {std::move(a), std::move(b)};
}

/// A X A^T.
inline SpdMatrix congruence(const DenseMatrix& a, const SpdMatrix& x) {
  return make_spd(SymMatrix::from_lower(a * x.to_dense() * a.transpose()));
}

}  // namespace spdcone
