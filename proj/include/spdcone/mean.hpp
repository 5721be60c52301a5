#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spdcone/geodesics.hpp"
#include "spdcone/metrics.hpp"

namespace spdcone {

enum class MeanStrategy { Inductive, FixedPoint, Hybrid };

constexpr std::string_view to_string(MeanStrategy s) {
  switch (s) {
    case MeanStrategy::Inductive: return "inductive";
    case MeanStrategy::FixedPoint: return "fixed-point";
    case MeanStrategy::Hybrid: return "hybrid";
  }
  return "hybrid";
}

inline MeanStrategy strategy_from_string(std::string_view s) {
  if (s == "inductive") return MeanStrategy::Inductive;
  if (s == "fixed-point") return MeanStrategy::FixedPoint;
  if (s == "hybrid") return MeanStrategy::Hybrid;
  throw Error(ErrorCode::InvalidArgument, "unknown mean strategy '" + std::string(s) + "'");
}

struct MeanOptions {
  double tol = 1e-10;           ///< per-cycle d_T displacement target (relative to input diameter)
  double residual_tol = 1e-8;   ///< certificate threshold on ||E(X)||_F / (k ||X||_F)
  long long max_cycles = 1'000'000;
  EigenOptions eigen;
  MeanStrategy strategy = MeanStrategy::Hybrid;
  int fixed_point_max_iter = 200;
  /// Hybrid strategy: the warm start enters the inductive recursion as the
  /// iterate at the start of this cycle, so confirmation steps are small.
  long long hybrid_cycle_offset = 10'000'000;
  int hybrid_polish_rounds = 3;
  /// Inductive strategy: cycles between progress checks.
  long long progress_window = 10'000;

  void validate() const {
    if (!(tol > 0) || !(residual_tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    if (max_cycles < 1) throw Error(ErrorCode::InvalidArgument, "max_cycles must be >= 1");
    if (fixed_point_max_iter < 1) throw Error(ErrorCode::InvalidArgument, "fixed_point_max_iter must be >= 1");
    if (hybrid_cycle_offset < 0 || progress_window < 1)
      throw Error(ErrorCode::InvalidArgument, "invalid cycle bookkeeping option");
    eigen.validate();
  }
};

struct MeanProblem {
  std::vector<SpdMatrix> points;
  std::optional<SpdMatrix> init;  ///< defaults to the arithmetic mean
  MeanOptions opts;
};

struct MeanResult {
  SpdMatrix mean;
  long long cycles_used = 0;
  /// d_T between consecutive cycle-start iterates (d_H of the last F-map step
  /// for the fixed-point strategy).
  double final_displacement = 0.0;
  double residual_norm = 0.0;
  bool certified = false;
  int fixed_point_iterations = 0;
  /// Product of contraction factors over the last cycle (1 when no cycle ran).
  double contraction_bound = 1.0;
  MeanStrategy strategy = MeanStrategy::Hybrid;
};

/// Cycle cap reached with the displacement still above tolerance.
class MeanNoConvergence : public Error {
 public:
  MeanNoConvergence(SpdMatrix last, double displacement, double residual)
      : Error(ErrorCode::NoConvergence, "mean iteration hit max_cycles; displacement " +
                                            format_number(displacement) + ", residual " + format_number(residual)),
        last_(std::move(last)),
        displacement_(displacement),
        residual_(residual) {}

  const SpdMatrix& last_iterate() const { return last_; }
  double displacement() const { return displacement_; }
  double residual() const { return residual_; }

 private:
  SpdMatrix last_;
  double displacement_;
  double residual_;
};

/// The F-map iteration did not settle; carries the radially corrected best iterate.
class FixedPointStalled : public Error {
 public:
  FixedPointStalled(SpdMatrix best, double displacement, int iterations)
      : Error(ErrorCode::FixedPointStalled, "F-map displacement " + format_number(displacement) + " after " +
                                                std::to_string(iterations) + " iterations"),
        best_(std::move(best)),
        displacement_(displacement) {}

  const SpdMatrix& best_iterate() const { return best_; }
  double displacement() const { return displacement_; }

 private:
  SpdMatrix best_;
  double displacement_;
};

namespace detail {

inline void check_points(const std::vector<SpdMatrix>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "mean needs at least one point");
  for (const auto& p : points) require_same_size(points.front(), p);
}

/// Sum of a_j Y_j (a_j > 0 keeps the result SPD).
inline SymMatrix weighted_sum(const std::vector<SpdMatrix>& points, const std::vector<double>& w) {
  SymMatrix acc = points[0].matrix().scaled(w[0]);
  for (std::size_t j = 1; j < points.size(); ++j) acc = linear_combination(1.0, acc, w[j], points[j].matrix());
  return acc;
}

struct Derivatives {
  std::vector<double> m;
  double sum_m = 0.0;
  double sum_o = 0.0;
};

inline Derivatives derivatives_at(const std::vector<SpdMatrix>& points, const SpdMatrix& x, const EigenOptions& eo) {
  Derivatives d;
  d.m.reserve(points.size());
  for (const auto& y : points) {
    const PencilExtremes e = extreme_pair(x, y, eo);
    const auto [m, o] = coefficient_derivatives(e.alpha, e.beta);
    d.m.push_back(m);
    d.sum_m += m;
    d.sum_o += o;
  }
  return d;
}

}  // namespace detail

/// Arithmetic mean of the points.
inline SpdMatrix arithmetic_mean(const std::vector<SpdMatrix>& points) {
  detail::check_points(points);
  return SpdMatrix::certify(
      detail::weighted_sum(points, std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size()))));
}

/// One step of the inductive recursion: X *_{1/(i+1)} Y_j.
inline SpdMatrix inductive_step(const SpdMatrix& x, const SpdMatrix& yj, long long i, const EigenOptions& opts = {}) {
  if (i < 1) throw Error(ErrorCode::InvalidArgument, "step index must be >= 1");
  return star_geodesic(x, yj, 1.0 / (static_cast<double>(i) + 1.0), opts);
}

/// One full cycle through the points starting at step index p k + 1, i.e. the
/// map taking the iterate X_{pk+1} to X_{(p+1)k+1}.
inline SpdMatrix inductive_cycle(const std::vector<SpdMatrix>& points, const SpdMatrix& x, long long p,
                                 const EigenOptions& opts = {}) {
  detail::check_points(points);
  const long long k = static_cast<long long>(points.size());
  SpdMatrix cur = x;
  for (long long j = 0; j < k; ++j) cur = inductive_step(cur, points[j], p * k + j + 1, opts);
  return cur;
}

struct MeanResidual {
  SymMatrix matrix;   ///< E(X) = sum_j m_j Y_j + (sum_j o_j) X
  double norm = 0.0;  ///< ||E(X)||_F / (k ||X||_F)
};

/// The fixed-point residual whose unique root is the inductive mean.
inline MeanResidual residual(const std::vector<SpdMatrix>& points, const SpdMatrix& x, const EigenOptions& opts = {}) {
  detail::check_points(points);
  require_same_size(points.front(), x);
  const detail::Derivatives d = detail::derivatives_at(points, x, opts);
  MeanResidual r;
  r.matrix = linear_combination(1.0, detail::weighted_sum(points, d.m), d.sum_o, x.matrix());
  r.norm = r.matrix.frobenius_norm() / (static_cast<double>(points.size()) * x.frobenius_norm());
  return r;
}

/// gamma_{1-t}(R) = (1 - e^{-R(1-t)}) / (1 - e^{-R}): Hilbert contraction of a
/// step of size t within a region of Hilbert diameter R.
inline double contraction_factor(double R, double t) {
  if (!(R > 0) || !std::isfinite(R)) throw Error(ErrorCode::NonPositiveR, "R must be positive");
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in [0,1]");
  return std::expm1(-R * (1.0 - t)) / std::expm1(-R);
}

/// Product of contraction factors over cycle p (steps pk+1 .. (p+1)k).
inline double cycle_contraction_bound(double R, long long p, long long k) {
  double prod = 1.0;
  for (long long i = p * k + 1; i <= (p + 1) * k; ++i)
    prod *= contraction_factor(R, 1.0 / (static_cast<double>(i) + 1.0));
  return prod;
}

namespace detail {

struct FixedPointRun {
  SpdMatrix point;  // radially corrected
  double displacement;
  int iterations;
  bool converged;
};

inline FixedPointRun run_fixed_point(const std::vector<SpdMatrix>& points, const SpdMatrix& start,
                                     const MeanOptions& opts) {
  const EigenOptions& eo = opts.eigen;
  SpdMatrix x = start;
  double disp = std::numeric_limits<double>::infinity();
  double prev = disp;
  bool done = false;
  int it = 0;
  Derivatives d = derivatives_at(points, x, eo);
  while (it < opts.fixed_point_max_iter && !done) {
    std::vector<double> w = d.m;
    for (double& v : w) v /= d.sum_m;
    SpdMatrix next = SpdMatrix::certify(weighted_sum(points, w));
    prev = disp;
    disp = hilbert_distance(x, next, eo);
    x = std::move(next);
    ++it;
    d = derivatives_at(points, x, eo);
    // Distance to the fixed point is about disp * q / (1 - q) for observed rate q.
    const double q = disp / prev;
    const double remaining = q < 1.0 ? disp * q / (1.0 - q) : std::numeric_limits<double>::infinity();
    done = disp < opts.tol && (remaining < 0.1 * opts.tol || disp <= std::max(1e-3 * opts.tol, 1e-13));
  }
  // F is constant along rays; the root of E on the ray through x is
  // exp((sum m + sum o) / k) x.
  const double c = std::exp((d.sum_m + d.sum_o) / static_cast<double>(points.size()));
  return {x.scaled(c), disp, it, disp < opts.tol};
}

inline double input_diameter(const std::vector<SpdMatrix>& points, const EigenOptions& eo) {
  double diam = 0.0;
  for (std::size_t j = 1; j < points.size(); ++j) diam = std::max(diam, thompson_distance(points[0], points[j], eo));
  return diam;
}

inline double hilbert_diameter(const std::vector<SpdMatrix>& points, const SpdMatrix& start, const EigenOptions& eo) {
  double r = 0.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    r = std::max(r, hilbert_distance(start, points[a], eo));
    for (std::size_t b = a + 1; b < points.size(); ++b) r = std::max(r, hilbert_distance(points[a], points[b], eo));
  }
  return r;
}

}  // namespace detail

/// Warm start from the fixed-point characterization: iterate
/// F(X) = sum_j m_j(X) Y_j / sum_j m_j(X) from `start` (default: arithmetic
/// mean) until the d_H displacement drops below opts.tol, then rescale onto the
/// root of the residual along that ray.
inline SpdMatrix fixed_point_init(const std::vector<SpdMatrix>& points, const MeanOptions& opts = {},
                                  const std::optional<SpdMatrix>& start = std::nullopt) {
  detail::check_points(points);
  opts.validate();
  const detail::FixedPointRun run = detail::run_fixed_point(points, start ? *start : arithmetic_mean(points), opts);
  if (!run.converged) throw FixedPointStalled(run.point, run.displacement, run.iterations);
  return run.point;
}

/// The inductive Thompson mean of problem.points.
inline MeanResult inductive_mean(const MeanProblem& problem) {
  const auto& points = problem.points;
  const MeanOptions& opts = problem.opts;
  detail::check_points(points);
  opts.validate();
  if (problem.init) require_same_size(points.front(), *problem.init);
  const EigenOptions& eo = opts.eigen;
  const long long k = static_cast<long long>(points.size());

  MeanResult out{points.front()};
  out.strategy = opts.strategy;
  auto finish = [&](SpdMatrix x) {
    const MeanResidual r = residual(points, x, eo);
    out.mean = std::move(x);
    out.residual_norm = r.norm;
    out.certified = r.norm <= opts.residual_tol;
    return out;
  };

  if (k == 1) return finish(points.front());

  const SpdMatrix start = problem.init ? *problem.init : arithmetic_mean(points);

  if (opts.strategy == MeanStrategy::FixedPoint) {
    const detail::FixedPointRun run = detail::run_fixed_point(points, start, opts);
    if (!run.converged) throw FixedPointStalled(run.point, run.displacement, run.iterations);
    out.fixed_point_iterations = run.iterations;
    out.final_displacement = run.displacement;
    return finish(run.point);
  }

  const double scale = std::max(1.0, detail::input_diameter(points, eo));
  const double radius = detail::hilbert_diameter(points, start, eo);
  auto bound_for = [&](long long p) { return radius > 0 ? cycle_contraction_bound(radius, p, k) : 1.0; };

  if (opts.strategy == MeanStrategy::Inductive) {
    SpdMatrix x = start;
    double window_start_disp = std::numeric_limits<double>::infinity();
    for (long long p = 0; p < opts.max_cycles; ++p) {
      SpdMatrix next = inductive_cycle(points, x, p, eo);
      const double disp = thompson_distance(x, next, eo);
      x = std::move(next);
      out.cycles_used = p + 1;
      out.final_displacement = disp;
      out.contraction_bound = bound_for(p);
      if (disp <= opts.tol * scale) return finish(std::move(x));
      if ((p + 1) % opts.progress_window == 0) {
        // Harmonic steps shrink displacement slowly; the certificate decides.
        if (disp > 0.5 * window_start_disp && residual(points, x, eo).norm <= 10.0 * opts.residual_tol)
          return finish(std::move(x));
        window_start_disp = disp;
      }
    }
    const double res = residual(points, x, eo).norm;
    throw MeanNoConvergence(std::move(x), out.final_displacement, res);
  }

  // Hybrid: fixed-point warm start, confirmed by late-index inductive cycles.
  auto warm = [&](const SpdMatrix& from) {
    const detail::FixedPointRun run = detail::run_fixed_point(points, from, opts);
    out.fixed_point_iterations += run.iterations;
    return run.point;
  };
  SpdMatrix x = warm(start);
  long long p = opts.hybrid_cycle_offset;
  int polish = 0;
  while (true) {
    SpdMatrix next = inductive_cycle(points, x, p, eo);
    const double disp = thompson_distance(x, next, eo);
    x = std::move(next);
    ++out.cycles_used;
    out.final_displacement = disp;
    out.contraction_bound = bound_for(p);
    ++p;
    if (disp <= opts.tol * scale) {
      const double res = residual(points, x, eo).norm;
      if (res <= opts.residual_tol || polish >= opts.hybrid_polish_rounds) return finish(std::move(x));
      ++polish;
      x = warm(x);
      continue;
    }
    if (out.cycles_used >= opts.max_cycles) {
      const double res = residual(points, x, eo).norm;
      throw MeanNoConvergence(std::move(x), disp, res);
    }
  }
}

}  // namespace spdcone
