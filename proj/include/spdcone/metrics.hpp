#pragma once

#include <cmath>
#include <limits>

#include "spdcone/eigen_extreme.hpp"
#include "spdcone/spd_matrix.hpp"

namespace spdcone {

/// Exponent p of the l_p gauge applied to log-eigenvalues; p = infinity is
/// allowed.
struct GaugeParameter {
  double p = 2.0;

  static GaugeParameter infinity() { return {std::numeric_limits<double>::infinity()}; }

  void validate() const {
    if (!(p >= 1.0)) throw Error(ErrorCode::InvalidGauge, "gauge exponent must be >= 1");
  }
};

/// Thompson part metric max(log beta, -log alpha). Only the two extreme
/// generalized eigenvalues are computed.
inline double thompson_distance(const SpdMatrix& x, const SpdMatrix& y, const EigenOptions& opts = {}) {
  const PencilExtremes e = extreme_pair(x, y, opts);
  return std::max({std::log(e.beta), -std::log(e.alpha), 0.0});
}

/// Hilbert projective metric log(beta / alpha).
inline double hilbert_distance(const SpdMatrix& x, const SpdMatrix& y, const EigenOptions& opts = {}) {
  const PencilExtremes e = extreme_pair(x, y, opts);
  return std::max(std::log(e.beta) - std::log(e.alpha), 0.0);
}

/// l_p norm of the log generalized eigenvalues (dense only).
inline double phi_distance(const SpdMatrix& x, const SpdMatrix& y, GaugeParameter g,
                           long dense_ceiling = kDefaultDenseCeiling) {
  g.validate();
  const Spectrum s = spectrum_dense(x, y, dense_ceiling);
  const Vector logs = s.eigenvalues.array().log().abs();
  if (std::isinf(g.p)) return logs.maxCoeff();
  if (g.p == 1.0) return logs.sum();
  if (g.p == 2.0) return logs.norm();
  const double top = logs.maxCoeff();
  if (top == 0.0) return 0.0;
  return top * std::pow((logs / top).array().pow(g.p).sum(), 1.0 / g.p);
}

/// Affine-invariant Riemannian distance sqrt(sum log^2 lambda_i) (dense only).
inline double riemannian_distance(const SpdMatrix& x, const SpdMatrix& y, long dense_ceiling = kDefaultDenseCeiling) {
  return phi_distance(x, y, GaugeParameter{2.0}, dense_ceiling);
}

}  // namespace spdcone
