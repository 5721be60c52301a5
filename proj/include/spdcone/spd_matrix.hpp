#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>

#include "spdcone/error.hpp"
#include "spdcone/options.hpp"
#include "spdcone/sym_matrix.hpp"

namespace spdcone {

/// Pivots at or below this fraction of the largest diagonal entry fail
/// certification.
inline constexpr double kPivotThreshold = 1e-14;

using Permutation = Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int>;

/// Lower-triangular factor G with X = G G^T. Dense factors have G = L; sparse
/// factors carry a fill-reducing permutation P with P X P^T = L L^T, so that
/// G = P^T L.
class CholeskyFactor {
 public:
  /// Factor `x`, throwing NotPositiveDefinite (pivot <= 0) or
  /// NumericalBreakdown (pivot below kPivotThreshold * max diagonal).
  static CholeskyFactor compute(const SymMatrix& x) {
    const double max_diag = x.max_diagonal();
    const double threshold = kPivotThreshold * std::max(max_diag, 0.0);
    if (!x.is_sparse()) {
      Eigen::LLT<DenseMatrix, Eigen::Lower> llt(x.dense());
      bool ok = llt.info() == Eigen::Success;
      DenseMatrix L;
      if (ok) {
        L = llt.matrixL();
        ok = L.diagonal().array().square().minCoeff() > threshold;
      }
      if (!ok) report_dense_failure(x.dense(), threshold);
      CholeskyFactor f;
      f.data_ = std::move(L);
      return f;
    }
    Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
    llt.compute(x.sparse_lower().selfadjointView<Eigen::Lower>());
    bool ok = llt.info() == Eigen::Success;
    SparseFactor sf;
    if (ok) {
      sf.L = llt.matrixL();
      sf.L.makeCompressed();
      sf.P = llt.permutationP();
      ok = Vector(sf.L.diagonal()).array().square().minCoeff() > threshold;
    }
    if (!ok) report_sparse_failure(x.sparse_lower(), threshold);
    CholeskyFactor f;
    f.data_ = std::move(sf);
    return f;
  }

  Index size() const {
    return is_sparse() ? std::get<SparseFactor>(data_).L.rows() : std::get<DenseMatrix>(data_).rows();
  }
  bool is_sparse() const { return std::holds_alternative<SparseFactor>(data_); }

  const DenseMatrix& dense_lower() const { return std::get<DenseMatrix>(data_); }
  const SparseMatrix& sparse_lower() const { return std::get<SparseFactor>(data_).L; }
  /// Identity for dense factors.
  Permutation permutation() const {
    if (is_sparse()) return std::get<SparseFactor>(data_).P;
    Permutation p(size());
    p.setIdentity();
    return p;
  }

  Vector diagonal() const {
    return is_sparse() ? Vector(sparse_lower().diagonal()) : Vector(dense_lower().diagonal());
  }

  /// G^{-1} y.
  Vector solve_lower(const Vector& y) const {
    if (!is_sparse()) return dense_lower().triangularView<Eigen::Lower>().solve(y);
    const auto& sf = std::get<SparseFactor>(data_);
    Vector py = sf.P * y;
    return sf.L.triangularView<Eigen::Lower>().solve(py);
  }

  /// G^{-T} u.
  Vector solve_upper(const Vector& u) const {
    if (!is_sparse()) return dense_lower().transpose().triangularView<Eigen::Upper>().solve(u);
    const auto& sf = std::get<SparseFactor>(data_);
    Vector z = sf.L.transpose().triangularView<Eigen::Upper>().solve(u);
    return sf.P.transpose() * z;
  }

  /// G^T v.
  Vector multiply_upper(const Vector& v) const {
    if (!is_sparse()) return dense_lower().transpose().triangularView<Eigen::Upper>() * v;
    const auto& sf = std::get<SparseFactor>(data_);
    Vector pv = sf.P * v;
    return sf.L.transpose() * pv;
  }

  /// G G^T as a dense matrix.
  DenseMatrix reconstruct() const {
    if (!is_sparse()) return dense_lower() * dense_lower().transpose();
    const auto& sf = std::get<SparseFactor>(data_);
    DenseMatrix L = DenseMatrix(sf.L);
    DenseMatrix llt = L * L.transpose();
    return sf.P.transpose() * llt * sf.P;
  }

  /// Factor of c X for c > 0.
  CholeskyFactor scaled(double c) const {
    CholeskyFactor f = *this;
    const double s = std::sqrt(c);
    if (is_sparse())
      std::get<SparseFactor>(f.data_).L *= s;
    else
      std::get<DenseMatrix>(f.data_) *= s;
    return f;
  }

 private:
  struct SparseFactor {
    SparseMatrix L;
    Permutation P;
  };

  CholeskyFactor() = default;

  [[noreturn]] static void throw_pivot(Index index, double pivot) {
    if (pivot <= 0.0 || !std::isfinite(pivot)) throw NotPositiveDefiniteError(static_cast<std::size_t>(index + 1), pivot);
    throw Error(ErrorCode::NumericalBreakdown, "Cholesky pivot " + std::to_string(index + 1) + " is " +
                                                   format_number(pivot) + ", below certification threshold");
  }

  // Unblocked right-looking elimination locating the first failing pivot.
  [[noreturn]] static void report_dense_failure(const DenseMatrix& a, double threshold) {
    DenseMatrix w = a;
    const Index n = w.rows();
    for (Index k = 0; k < n; ++k) {
      const double pivot = w(k, k);
      if (!(pivot > threshold)) throw_pivot(k, pivot);
      const double d = std::sqrt(pivot);
      w.col(k).tail(n - k - 1) /= d;
      for (Index j = k + 1; j < n; ++j) w.col(j).tail(n - j) -= w(j, k) * w.col(k).tail(n - j);
    }
    throw Error(ErrorCode::NumericalBreakdown, "Cholesky factorization failed");
  }

  [[noreturn]] static void report_sparse_failure(const SparseMatrix& lower, double threshold) {
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
    ldlt.compute(lower.selfadjointView<Eigen::Lower>());
    const Vector d = ldlt.vectorD();
    const Permutation pinv = ldlt.permutationP().inverse();
    for (Index k = 0; k < d.size(); ++k)
      if (!(d(k) > threshold)) throw_pivot(pinv.indices()(k), d(k));
    throw Error(ErrorCode::NumericalBreakdown, "sparse Cholesky factorization failed");
  }

  std::variant<DenseMatrix, SparseFactor> data_;
};

/// A symmetric matrix certified positive definite by a successful Cholesky
/// factorization, which is kept alongside the values.
class SpdMatrix {
 public:
  static SpdMatrix certify(SymMatrix m) {
    auto factor = std::make_shared<const CholeskyFactor>(CholeskyFactor::compute(m));
    return SpdMatrix(std::move(m), std::move(factor));
  }

  const SymMatrix& matrix() const { return matrix_; }
  const CholeskyFactor& factor() const { return *factor_; }
  Index size() const { return matrix_.size(); }
  bool is_sparse() const { return matrix_.is_sparse(); }
  DenseMatrix to_dense() const { return matrix_.to_dense(); }
  Vector multiply(const Vector& x) const { return matrix_.multiply(x); }
  double frobenius_norm() const { return matrix_.frobenius_norm(); }
  Index nnz() const { return matrix_.nnz(); }

  /// c X for c > 0; reuses the factorization.
  SpdMatrix scaled(double c) const {
    if (!(c > 0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
    return SpdMatrix(matrix_.scaled(c), std::make_shared<const CholeskyFactor>(factor_->scaled(c)));
  }

  SpdMatrix with_storage(bool sparse) const {
    if (sparse == is_sparse()) return *this;
    return certify(matrix_.with_storage(sparse));
  }

 private:
  SpdMatrix(SymMatrix m, std::shared_ptr<const CholeskyFactor> f) : matrix_(std::move(m)), factor_(std::move(f)) {}

  SymMatrix matrix_;
  std::shared_ptr<const CholeskyFactor> factor_;
};

inline SpdMatrix make_spd(SymMatrix m) { return SpdMatrix::certify(std::move(m)); }

/// Dense SPD matrix from a full symmetric matrix.
inline SpdMatrix make_spd(const DenseMatrix& full) { return make_spd(SymMatrix::from_dense(full)); }

/// Sparse SPD matrix from coordinate entries (see SymMatrix::from_triplets).
inline SpdMatrix make_spd(Index n, std::span<const Triplet> entries) {
  return make_spd(SymMatrix::from_triplets(n, entries));
}

inline const CholeskyFactor& cholesky(const SpdMatrix& x) { return x.factor(); }

inline void require_same_size(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " differ");
}

inline void require_dense_size(Index n, long ceiling) {
  if (n > ceiling)
    throw Error(ErrorCode::DenseLimitExceeded,
                "n = " + std::to_string(n) + " exceeds dense ceiling " + std::to_string(ceiling));
}

/// G^{-1} Y G^{-T} with X = G G^T: a symmetric matrix isospectral with Y X^{-1}.
/// The result is dense.
inline SymMatrix whiten(const SpdMatrix& x, const SpdMatrix& y) {
  require_same_size(x, y);
  const auto& f = x.factor();
  DenseMatrix yd = y.to_dense();
  DenseMatrix w;
  if (!f.is_sparse()) {
    const auto L = f.dense_lower().triangularView<Eigen::Lower>();
    DenseMatrix left = L.solve(yd);
    w = L.solve(left.transpose());
  } else {
    const Permutation& p = f.permutation();
    const auto L = f.sparse_lower().triangularView<Eigen::Lower>();
    DenseMatrix py = p * yd * p.transpose();
    DenseMatrix left = L.solve(py);
    DenseMatrix lt = left.transpose();
    w = L.solve(lt);
  }
  return SymMatrix::from_lower(0.5 * (w + w.transpose()));
}

/// Ascending generalized eigenvalues of the pencil (Y, X).
struct Spectrum {
  Vector eigenvalues;

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
  Index size() const { return eigenvalues.size(); }
};

namespace detail {

struct WhitenedEigensystem {
  Vector values;        // ascending
  DenseMatrix vectors;  // orthonormal columns in whitened coordinates
};

inline WhitenedEigensystem whitened_eigensystem(const SpdMatrix& x, const SpdMatrix& y, long ceiling) {
  require_same_size(x, y);
  require_dense_size(x.size(), ceiling);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(whiten(x, y).dense());
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalBreakdown, "dense eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace detail

/// Full spectrum of Y X^{-1} by dense decomposition of the whitened matrix.
inline Spectrum spectrum_dense(const SpdMatrix& x, const SpdMatrix& y, long dense_ceiling = kDefaultDenseCeiling) {
  require_same_size(x, y);
  require_dense_size(x.size(), dense_ceiling);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(whiten(x, y).dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalBreakdown, "dense eigensolver failed");
  return {es.eigenvalues()};
}

}  // namespace spdcone
