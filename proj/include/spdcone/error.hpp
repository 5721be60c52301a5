#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spdcone {

enum class ErrorCode {
  NotPositiveDefinite,
  AsymmetricInput,
  NumericalBreakdown,
  DimensionMismatch,
  DenseLimitExceeded,
  NoConvergence,
  InvalidGauge,
  NonPositiveAlpha,
  OrderViolation,
  DegeneratePencil,
  FixedPointStalled,
  NonPositiveR,
  InvalidArgument,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DenseLimitExceeded: return "DenseLimitExceeded";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidGauge: return "InvalidGauge";
    case ErrorCode::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::DegeneratePencil: return "DegeneratePencil";
    case ErrorCode::FixedPointStalled: return "FixedPointStalled";
    case ErrorCode::NonPositiveR: return "NonPositiveR";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Short %g rendering for numbers in messages.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Base of every exception thrown by the library. `code()` identifies the
/// failure class; subclasses carry structured payloads where callers need them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures of the numerics (as opposed to bad input).
  bool is_numerical() const noexcept {
    return code_ == ErrorCode::NotPositiveDefinite || code_ == ErrorCode::NumericalBreakdown ||
           code_ == ErrorCode::NoConvergence || code_ == ErrorCode::FixedPointStalled ||
           code_ == ErrorCode::DegeneratePencil;
  }

 private:
  ErrorCode code_;
};

/// Cholesky certification failed. `pivot()` is 1-based, in the caller's
/// (unpermuted) index space.
class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(std::size_t pivot, double pivot_value)
      : Error(ErrorCode::NotPositiveDefinite,
              "Cholesky pivot " + std::to_string(pivot) + " is " + format_number(pivot_value)),
        pivot_(pivot),
        pivot_value_(pivot_value) {}

  std::size_t pivot() const noexcept { return pivot_; }
  double pivot_value() const noexcept { return pivot_value_; }

 private:
  std::size_t pivot_;
  double pivot_value_;
};

/// Iteration cap reached in an eigensolve; carries the best estimate seen.
class EigenNoConvergence : public Error {
 public:
  EigenNoConvergence(double estimate, double residual, int iterations)
      : Error(ErrorCode::NoConvergence,
              "eigensolver stopped after " + std::to_string(iterations) +
                  " iterations, residual " + format_number(residual)),
        estimate_(estimate),
        residual_(residual),
        iterations_(iterations) {}

  double estimate() const noexcept { return estimate_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double estimate_;
  double residual_;
  int iterations_;
};

}  // namespace spdcone
