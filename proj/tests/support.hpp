#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "spdcone/spdcone.hpp"

namespace spdcone::test {

/// Generalized eigenvalues of (Y, X) from Eigen's generalized symmetric solver,
/// independent of the library's whitening path.
inline Vector oracle_spectrum(const SpdMatrix& x, const SpdMatrix& y) {
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(y.to_dense(), x.to_dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double oracle_beta(const SpdMatrix& x, const SpdMatrix& y) { return oracle_spectrum(x, y).maxCoeff(); }
// The small end of the spectrum only has absolute accuracy, so take it from
// the reversed pencil.
inline double oracle_alpha(const SpdMatrix& x, const SpdMatrix& y) { return 1.0 / oracle_beta(y, x); }

inline double oracle_thompson(const SpdMatrix& x, const SpdMatrix& y) {
  return std::max(std::log(oracle_beta(x, y)), -std::log(oracle_alpha(x, y)));
}

/// X^{1/2} (X^{-1/2} Y X^{-1/2})^t X^{1/2} through symmetric square roots.
inline DenseMatrix oracle_riemannian(const DenseMatrix& x, const DenseMatrix& y, double t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> sx(x);
  const DenseMatrix h = sx.operatorSqrt();
  const DenseMatrix hi = sx.operatorInverseSqrt();
  const DenseMatrix inner = hi * y * hi;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> si(0.5 * (inner + inner.transpose()));
  const Vector p = si.eigenvalues().array().pow(t).matrix();
  return h * si.eigenvectors() * p.asDiagonal() * si.eigenvectors().transpose() * h;
}

/// Closed-form star geodesic with the textbook coefficient formulas.
inline DenseMatrix oracle_star(const DenseMatrix& x, const DenseMatrix& y, double a, double b, double t) {
  if (b - a <= 1e-12 * b) return t * std::pow(a, t - 1) * y + (1 - t) * std::pow(a, t) * x;
  const double phi = (std::pow(b, t) - std::pow(a, t)) / (b - a);
  const double psi = (b * std::pow(a, t) - a * std::pow(b, t)) / (b - a);
  return phi * y + psi * x;
}

inline double rel_frobenius(const DenseMatrix& a, const DenseMatrix& ref) { return (a - ref).norm() / ref.norm(); }
inline double rel_frobenius(const SpdMatrix& a, const SpdMatrix& ref) {
  return rel_frobenius(a.to_dense(), ref.to_dense());
}

inline SpdMatrix dense_spd(const DenseMatrix& m) { return make_spd(SymMatrix::from_lower(m)); }

/// Y = X^{1/2} D X^{1/2} with D carrying exactly two distinct eigenvalues.
inline SpdMatrix two_eigenvalue_partner(const SpdMatrix& x, double l1, double l2, Index split, Rng& rng) {
  const Index n = x.size();
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = i < split ? l1 : l2;
  const DenseMatrix q = random_orthogonal(n, rng);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> sx(x.to_dense());
  const DenseMatrix h = sx.operatorSqrt();
  return dense_spd(h * q * d.asDiagonal() * q.transpose() * h);
}

// Mean of positive vectors on the orthant, entry by entry in long double.

namespace orthant {

using Real = long double;
using Vec = std::vector<Real>;

inline void extremes(const Vec& x, const Vec& y, Real& a, Real& b) {
  a = y[0] / x[0];
  b = a;
  for (std::size_t i = 1; i < x.size(); ++i) {
    a = std::min(a, y[i] / x[i]);
    b = std::max(b, y[i] / x[i]);
  }
}

/// Slopes at t=0 of the two coefficients, via series when the ratio is near 1.
inline void slopes(Real a, Real b, Real& m, Real& o) {
  const Real d = std::log(b) - std::log(a);
  if (d < 1e-6L) {
    // With b = a e^d both slopes involve d/(e^d-1); its series to fourth order.
    const Real g = 1 - d / 2 + d * d / 12 - d * d * d * d / 720;
    m = g / a;
    o = std::log(a) - 1 + d / 2 - d * d / 12 + d * d * d * d / 720;
    return;
  }
  m = d / (b - a);
  o = (b * std::log(a) - a * std::log(b)) / (b - a);
}

inline Vec step(const Vec& x, const Vec& y, Real t) {
  Real a, b;
  extremes(x, y, a, b);
  Real phi, psi;
  const Real d = std::log(b) - std::log(a);
  if (d == 0) {
    phi = t * std::pow(a, t - 1);
    psi = (1 - t) * std::pow(a, t);
  } else {
    phi = std::pow(a, t - 1) * std::expm1(t * d) / std::expm1(d);
    psi = std::pow(b, t) * std::expm1((1 - t) * d) / std::expm1(d);
  }
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = phi * y[i] + psi * x[i];
  return out;
}

inline Real hilbert(const Vec& x, const Vec& y) {
  Real a, b;
  extremes(x, y, a, b);
  return std::log(b / a);
}

/// F-map fixed point with the radial rescaling, then late-index cycles of the
/// inductive recursion.
inline Vec mean(const std::vector<Vec>& ys) {
  const std::size_t k = ys.size(), n = ys[0].size();
  Vec x(n, 0);
  for (const auto& y : ys)
    for (std::size_t i = 0; i < n; ++i) x[i] += y[i] / k;
  if (k == 1) return ys[0];
  auto rescaled = [&](const Vec& v) {
    Real sm = 0, so = 0;
    for (const auto& y : ys) {
      Real a, b, m, o;
      extremes(v, y, a, b);
      slopes(a, b, m, o);
      sm += m;
      so += o;
    }
    const Real c = std::exp((sm + so) / k);
    Vec out(v);
    for (auto& e : out) e *= c;
    return out;
  };
  for (int it = 0; it < 2000; ++it) {
    Vec num(n, 0);
    Real den = 0;
    for (const auto& y : ys) {
      Real a, b, m, o;
      extremes(x, y, a, b);
      slopes(a, b, m, o);
      for (std::size_t i = 0; i < n; ++i) num[i] += m * y[i];
      den += m;
    }
    for (auto& e : num) e /= den;
    const Real moved = hilbert(x, num);
    x = num;
    if (moved < 1e-17L) break;
  }
  x = rescaled(x);
  const long long p0 = 10'000'000;
  for (long long p = p0; p < p0 + 3; ++p)
    for (std::size_t j = 0; j < k; ++j) {
      const long long i = p * static_cast<long long>(k) + static_cast<long long>(j) + 1;
      x = step(x, ys[j], Real(1) / Real(i + 1));
    }
  return x;
}

}  // namespace orthant

}  // namespace spdcone::test
