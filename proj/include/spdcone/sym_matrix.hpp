#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spdcone/error.hpp"

namespace spdcone {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;
using Triplet = Eigen::Triplet<double>;

/// Relative tolerance for accepting a full matrix as symmetric.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Real symmetric matrix, stored either densely (full n x n, exactly mirrored)
/// or sparsely (lower triangle in compressed column form, rows sorted within
/// each column, no duplicates). Values are immutable once constructed.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Dense from a full matrix; both triangles must agree to kSymmetryTolerance.
  static SymMatrix from_dense(const DenseMatrix& full) {
    check_square(full.rows(), full.cols());
    const Index n = full.rows();
    for (Index j = 0; j < n; ++j) {
      for (Index i = j + 1; i < n; ++i) {
        const double a = full(i, j), b = full(j, i);
        if (!(std::abs(a - b) <= kSymmetryTolerance * std::max(std::abs(a), std::abs(b)))) {
          throw Error(ErrorCode::AsymmetricInput, "entries (" + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) + ") and its mirror differ");
        }
      }
    }
    return from_lower(full);
  }

  /// Dense from the lower triangle of `m`; the strict upper part is ignored.
  static SymMatrix from_lower(const DenseMatrix& m) {
    check_square(m.rows(), m.cols());
    DenseMatrix full = m.triangularView<Eigen::Lower>();
    full.triangularView<Eigen::StrictlyUpper>() = full.transpose();
    check_finite(full.data(), full.size());
    return SymMatrix(std::move(full));
  }

  /// Sparse from coordinate entries. An entry above the diagonal is read as its
  /// mirror below it; repeated coordinates are summed.
  static SymMatrix from_triplets(Index n, std::span<const Triplet> entries) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
    std::vector<Triplet> lower;
    lower.reserve(entries.size());
    for (const auto& t : entries) {
      if (t.row() < 0 || t.col() < 0 || t.row() >= n || t.col() >= n)
        throw Error(ErrorCode::InvalidArgument, "coordinate out of range");
      if (t.row() >= t.col())
        lower.push_back(t);
      else
        lower.emplace_back(t.col(), t.row(), t.value());
    }
    SparseMatrix s(n, n);
    s.setFromTriplets(lower.begin(), lower.end());
    s.makeCompressed();
    return from_sparse_lower(std::move(s));
  }

  /// Sparse from a full sparse matrix whose triangles must agree.
  static SymMatrix from_sparse_full(const SparseMatrix& full) {
    check_square(full.rows(), full.cols());
    SparseMatrix t = full.transpose();
    SparseMatrix diff = full - t;
    for (Index k = 0; k < diff.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
        const double a = full.coeff(it.row(), it.col()), b = full.coeff(it.col(), it.row());
        if (!(std::abs(a - b) <= kSymmetryTolerance * std::max(std::abs(a), std::abs(b))))
          throw Error(ErrorCode::AsymmetricInput, "entries (" + std::to_string(it.row() + 1) + "," +
                                                      std::to_string(it.col() + 1) +
                                                      ") and its mirror differ");
      }
    }
    SparseMatrix lower = full.triangularView<Eigen::Lower>();
    return from_sparse_lower(std::move(lower));
  }

  /// Sparse from a matrix holding only the lower triangle.
  static SymMatrix from_sparse_lower(SparseMatrix lower) {
    check_square(lower.rows(), lower.cols());
    lower.makeCompressed();
    for (Index k = 0; k < lower.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(lower, k); it; ++it)
        if (it.row() < it.col())
          throw Error(ErrorCode::InvalidArgument, "sparse storage must be lower triangular");
    check_finite(lower.valuePtr(), lower.nonZeros());
    return SymMatrix(std::move(lower));
  }

  static SymMatrix identity(Index n, bool sparse = false) {
    if (sparse) {
      std::vector<Triplet> d;
      for (Index i = 0; i < n; ++i) d.emplace_back(i, i, 1.0);
      return from_triplets(n, d);
    }
    return SymMatrix(DenseMatrix::Identity(n, n));
  }

  static SymMatrix diagonal(const Vector& d, bool sparse = false) {
    if (sparse) {
      std::vector<Triplet> t;
      for (Index i = 0; i < d.size(); ++i) t.emplace_back(i, i, d(i));
      return from_triplets(d.size(), t);
    }
    return from_lower(d.asDiagonal().toDenseMatrix());
  }

  Index size() const {
    return std::visit([](const auto& m) { return Index(m.rows()); }, data_);
  }
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(data_); }

  /// Full dense storage; only valid when !is_sparse().
  const DenseMatrix& dense() const { return std::get<DenseMatrix>(data_); }
  /// Lower-triangle sparse storage; only valid when is_sparse().
  const SparseMatrix& sparse_lower() const { return std::get<SparseMatrix>(data_); }

  DenseMatrix to_dense() const {
    if (!is_sparse()) return dense();
    DenseMatrix full = DenseMatrix(sparse_lower());
    full.triangularView<Eigen::StrictlyUpper>() = full.transpose();
    return full;
  }

  /// Sparse copy. Exact zeros of dense storage are dropped; stored entries of
  /// sparse storage are kept even when zero.
  SymMatrix to_sparse() const {
    if (is_sparse()) return *this;
    SparseMatrix s = dense().triangularView<Eigen::Lower>().toDenseMatrix().sparseView(0.0, 0.0);
    s.makeCompressed();
    return SymMatrix(std::move(s));
  }

  SymMatrix with_storage(bool sparse) const {
    if (sparse == is_sparse()) return *this;
    return sparse ? to_sparse() : SymMatrix(to_dense());
  }

  /// Storage with explicit zeros removed; the canonical form for comparisons.
  SymMatrix pruned() const {
    if (!is_sparse()) return *this;
    SparseMatrix s = sparse_lower();
    s.prune(0.0, 0.0);
    s.makeCompressed();
    return SymMatrix(std::move(s));
  }

  double coeff(Index i, Index j) const {
    if (!is_sparse()) return dense()(i, j);
    if (i < j) std::swap(i, j);
    return sparse_lower().coeff(i, j);
  }

  Vector multiply(const Vector& x) const {
    if (x.size() != size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    if (is_sparse()) return sparse_lower().selfadjointView<Eigen::Lower>() * x;
    return dense() * x;
  }

  double frobenius_norm() const {
    if (!is_sparse()) return dense().norm();
    double total = 0.0;
    const auto& s = sparse_lower();
    for (Index k = 0; k < s.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(s, k); it; ++it)
        total += (it.row() == it.col() ? 1.0 : 2.0) * it.value() * it.value();
    return std::sqrt(total);
  }

  double max_diagonal() const {
    if (!is_sparse()) return dense().diagonal().maxCoeff();
    return Vector(sparse_lower().diagonal()).maxCoeff();
  }

  /// Number of exactly nonzero entries of the full n x n matrix.
  Index nnz() const {
    if (!is_sparse()) return (dense().array() != 0.0).count();
    Index count = 0;
    const auto& s = sparse_lower();
    for (Index k = 0; k < s.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(s, k); it; ++it)
        if (it.value() != 0.0) count += it.row() == it.col() ? 1 : 2;
    return count;
  }

  /// Structural entry count of the full matrix: stored entries (mirrored) for
  /// sparse storage, n^2 for dense.
  Index stored_entries() const {
    if (!is_sparse()) return size() * size();
    Index count = 0;
    const auto& s = sparse_lower();
    for (Index k = 0; k < s.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(s, k); it; ++it) count += it.row() == it.col() ? 1 : 2;
    return count;
  }

  /// Fraction of nonzero entries (structural for sparse storage).
  double density() const {
    const double n = static_cast<double>(size());
    return static_cast<double>(is_sparse() ? stored_entries() : nnz()) / (n * n);
  }

  /// Lower-triangle coordinates (row >= col) of the structural pattern; for
  /// dense storage, of the exact nonzeros. Sorted column-major.
  std::vector<std::pair<Index, Index>> pattern() const {
    std::vector<std::pair<Index, Index>> out;
    if (is_sparse()) {
      const auto& s = sparse_lower();
      for (Index k = 0; k < s.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(s, k); it; ++it) out.emplace_back(it.row(), it.col());
    } else {
      const auto& d = dense();
      for (Index j = 0; j < d.cols(); ++j)
        for (Index i = j; i < d.rows(); ++i)
          if (d(i, j) != 0.0) out.emplace_back(i, j);
    }
    return out;
  }

  SymMatrix scaled(double c) const {
    if (is_sparse()) {
      SparseMatrix s = c * sparse_lower();
      return SymMatrix(std::move(s));
    }
    return SymMatrix(DenseMatrix(c * dense()));
  }

  /// a*A + b*B. Sparse when both operands are sparse (pattern is the union),
  /// dense otherwise.
  friend SymMatrix linear_combination(double a, const SymMatrix& A, double b, const SymMatrix& B) {
    if (A.size() != B.size()) throw Error(ErrorCode::DimensionMismatch, "operand sizes differ");
    if (A.is_sparse() && B.is_sparse()) {
      SparseMatrix s = a * A.sparse_lower() + b * B.sparse_lower();
      s.makeCompressed();
      return SymMatrix(std::move(s));
    }
    if (!A.is_sparse() && !B.is_sparse()) return SymMatrix(DenseMatrix(a * A.dense() + b * B.dense()));
    return SymMatrix(DenseMatrix(a * A.to_dense() + b * B.to_dense()));
  }

 private:
  explicit SymMatrix(DenseMatrix m) : data_(std::move(m)) {}
  explicit SymMatrix(SparseMatrix m) : data_(std::move(m)) {}

  static void check_square(Index r, Index c) {
    if (r != c) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  }
  static void check_finite(const double* p, Index count) {
    for (Index i = 0; i < count; ++i)
      if (!std::isfinite(p[i])) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
  }

  std::variant<DenseMatrix, SparseMatrix> data_{DenseMatrix()};
};

/// Largest absolute entrywise difference, independent of storage.
inline double max_abs_difference(const SymMatrix& a, const SymMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "operand sizes differ");
  if (a.is_sparse() && b.is_sparse()) {
    SparseMatrix d = a.sparse_lower() - b.sparse_lower();
    double m = 0.0;
    for (Index k = 0; k < d.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }
  return (a.to_dense() - b.to_dense()).cwiseAbs().maxCoeff();
}

/// ||A - B||_F, independent of storage.
inline double frobenius_distance(const SymMatrix& a, const SymMatrix& b) {
  return linear_combination(1.0, a, -1.0, b).frobenius_norm();
}

}  // namespace spdcone
