#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "spdcone/eigen_extreme.hpp"
#include "spdcone/spd_matrix.hpp"

namespace spdcone {

/// Below this gap log(beta) - log(alpha) the pencil is treated as scalar.
inline constexpr double kEqualBranchThreshold = 1e-8;
/// Relative slack allowed when checking alpha <= beta.
inline constexpr double kOrderTolerance = 1e-12;

enum class CoefficientBranch { Generic, Equal };

/// Coefficients of X *_t Y = phi Y + psi X and their t-derivatives at 0.
struct GeodesicCoefficients {
  double phi = 0.0;
  double psi = 1.0;
  double m = 1.0;   ///< d phi / dt at t = 0
  double o = -1.0;  ///< d psi / dt at t = 0
  CoefficientBranch branch = CoefficientBranch::Equal;
};

namespace detail {

inline void check_alpha_beta(double alpha, double beta) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw Error(ErrorCode::NonPositiveAlpha, "alpha must be positive");
  if (!std::isfinite(beta) || beta < alpha * (1.0 - kOrderTolerance))
    throw Error(ErrorCode::OrderViolation, "beta must not be below alpha");
}

}  // namespace detail

/// phi(t) = (beta^t - alpha^t)/(beta - alpha), psi(t) = (beta alpha^t - alpha beta^t)/(beta - alpha),
/// evaluated through expm1 of the log-gap d so that nothing cancels as beta -> alpha:
///   phi = alpha^(t-1) expm1(t d) / expm1(d),   psi = beta^t expm1((1-t) d) / expm1(d).
/// When d <= kEqualBranchThreshold the scalar-pencil limits t mu^(t-1), (1-t) mu^t are used
/// at mu = sqrt(alpha beta), which matches the generic branch to O(d^2).
inline GeodesicCoefficients geodesic_coefficients(double alpha, double beta, double t) {
  detail::check_alpha_beta(alpha, beta);
  const double la = std::log(alpha);
  const double lb = std::max(std::log(beta), la);
  const double gap = lb - la;
  GeodesicCoefficients c;
  if (gap <= kEqualBranchThreshold) {
    const double lmu = 0.5 * (la + lb);
    c.phi = t * std::exp((t - 1.0) * lmu);
    c.psi = (1.0 - t) * std::exp(t * lmu);
    c.m = std::exp(-lmu);
    c.o = lmu - 1.0;
    c.branch = CoefficientBranch::Equal;
    return c;
  }
  const double e = std::expm1(gap);
  c.phi = std::exp((t - 1.0) * la) * (std::expm1(t * gap) / e);
  c.psi = std::exp(t * lb) * (std::expm1((1.0 - t) * gap) / e);
  c.m = gap / (alpha * e);
  c.o = la - gap / e;
  c.branch = CoefficientBranch::Generic;
  return c;
}

/// (m, o): derivatives of phi and psi at t = 0.
inline std::pair<double, double> coefficient_derivatives(double alpha, double beta) {
  const GeodesicCoefficients c = geodesic_coefficients(alpha, beta, 0.0);
  return {c.m, c.o};
}

/// phi Y + psi X for given pencil extremes of Y X^{-1}; no certification.
inline SymMatrix star_combination(const SpdMatrix& x, const SpdMatrix& y, double t, const PencilExtremes& e) {
  const GeodesicCoefficients c = geodesic_coefficients(e.alpha, e.beta, t);
  return linear_combination(c.phi, y.matrix(), c.psi, x.matrix());
}

inline void require_unit_interval(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "t = " + format_number(t) + " outside [0,1]; use geodesic_point");
}

/// The distinguished Thompson geodesic X *_t Y for t in [0,1]. A linear
/// combination of the endpoints, so a sparse pair yields a result whose
/// pattern lies inside the union of theirs.
inline SpdMatrix star_geodesic(const SpdMatrix& x, const SpdMatrix& y, double t, const EigenOptions& opts = {}) {
  require_unit_interval(t);
  require_same_size(x, y);
  return SpdMatrix::certify(star_combination(x, y, t, extreme_pair(x, y, opts)));
}

/// Riemannian geodesic X #_t Y = X^{1/2} (X^{-1/2} Y X^{-1/2})^t X^{1/2}, computed as
/// G (W^t) G^T with X = G G^T and W the whitened pencil (dense result).
inline SymMatrix riemannian_geodesic_matrix(const SpdMatrix& x, const SpdMatrix& y, double t,
                                            long dense_ceiling = kDefaultDenseCeiling) {
  const auto sys = detail::whitened_eigensystem(x, y, dense_ceiling);
  const DenseMatrix inner =
      sys.vectors * sys.values.array().pow(t).matrix().asDiagonal() * sys.vectors.transpose();
  const CholeskyFactor& f = x.factor();
  DenseMatrix g;
  if (f.is_sparse())
    g = f.permutation().transpose() * DenseMatrix(f.sparse_lower());
  else
    g = f.dense_lower();
  const DenseMatrix out = g * inner * g.transpose();
  return SymMatrix::from_lower(0.5 * (out + out.transpose()));
}

inline SpdMatrix riemannian_geodesic(const SpdMatrix& x, const SpdMatrix& y, double t,
                                     long dense_ceiling = kDefaultDenseCeiling) {
  return SpdMatrix::certify(riemannian_geodesic_matrix(x, y, t, dense_ceiling));
}

/// Coefficients (of Y, of X) of the diamond geodesic, using lambda = beta when
/// alpha beta >= 1 and lambda = alpha otherwise.
inline std::pair<double, double> diamond_coefficients(double alpha, double beta, double t) {
  detail::check_alpha_beta(alpha, beta);
  if (std::log(beta) - std::log(alpha) <= kEqualBranchThreshold)
    throw Error(ErrorCode::DegeneratePencil, "lambda_max == lambda_min; use star_geodesic");
  const double l = (alpha * beta >= 1.0) ? std::log(beta) : std::log(alpha);
  const double s = std::sinh(l);
  return {std::sinh(t * l) / s, std::sinh((1.0 - t) * l) / s};
}

/// Alternative Thompson geodesic X <>_t Y; undefined for scalar pencils.
inline SpdMatrix diamond_geodesic(const SpdMatrix& x, const SpdMatrix& y, double t, const EigenOptions& opts = {}) {
  require_unit_interval(t);
  require_same_size(x, y);
  const PencilExtremes e = extreme_pair(x, y, opts);
  const auto [cy, cx] = diamond_coefficients(e.alpha, e.beta, t);
  return SpdMatrix::certify(linear_combination(cy, y.matrix(), cx, x.matrix()));
}

enum class GeodesicFamily { Star, Riemannian, Diamond };

constexpr std::string_view to_string(GeodesicFamily f) {
  switch (f) {
    case GeodesicFamily::Star: return "star";
    case GeodesicFamily::Riemannian: return "riemannian";
    case GeodesicFamily::Diamond: return "diamond";
  }
  return "star";
}

inline GeodesicFamily family_from_string(std::string_view s) {
  if (s == "star") return GeodesicFamily::Star;
  if (s == "riemannian") return GeodesicFamily::Riemannian;
  if (s == "diamond") return GeodesicFamily::Diamond;
  throw Error(ErrorCode::InvalidArgument, "unknown geodesic family '" + std::string(s) + "'");
}

/// A point on a geodesic at arbitrary t. Inside [0,1] the point is always
/// certified SPD. Outside, it is returned unchecked with `extrapolated` set,
/// unless `certify_extrapolated` asks for certification (which may throw
/// NotPositiveDefinite).
struct GeodesicPoint {
  double t = 0.0;
  SymMatrix matrix;
  bool extrapolated = false;
  bool certified = false;
};

inline GeodesicPoint geodesic_point(GeodesicFamily family, const SpdMatrix& x, const SpdMatrix& y, double t,
                                    const EigenOptions& opts = {}, bool certify_extrapolated = false) {
  require_same_size(x, y);
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite");
  GeodesicPoint p;
  p.t = t;
  p.extrapolated = t < 0.0 || t > 1.0;
  switch (family) {
    case GeodesicFamily::Star:
      p.matrix = star_combination(x, y, t, extreme_pair(x, y, opts));
      break;
    case GeodesicFamily::Riemannian:
      p.matrix = riemannian_geodesic_matrix(x, y, t, opts.dense_ceiling);
      break;
    case GeodesicFamily::Diamond: {
      const PencilExtremes e = extreme_pair(x, y, opts);
      const auto [cy, cx] = diamond_coefficients(e.alpha, e.beta, t);
      p.matrix = linear_combination(cy, y.matrix(), cx, x.matrix());
      break;
    }
  }
  if (!p.extrapolated || certify_extrapolated) {
    SpdMatrix::certify(p.matrix);
    p.certified = true;
  }
  return p;
}

}  // namespace spdcone
