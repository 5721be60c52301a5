#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string_view>

#include "spdcone/error.hpp"

namespace spdcone {

enum class Backend { Auto, Dense, Iterative };

constexpr std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Dense: return "dense";
    case Backend::Iterative: return "iterative";
  }
  return "auto";
}

inline Backend backend_from_string(std::string_view s) {
  if (s == "auto") return Backend::Auto;
  if (s == "dense") return Backend::Dense;
  if (s == "iterative") return Backend::Iterative;
  throw Error(ErrorCode::InvalidArgument, "unknown backend '" + std::string(s) + "'");
}

/// Running total of operator applications across eigensolves. Shared between
/// copies of an EigenOptions so a whole computation can be accounted for.
struct IterationTally {
  std::atomic<long long> solves{0};
  std::atomic<long long> iterations{0};

  void record(long long its) {
    solves.fetch_add(1, std::memory_order_relaxed);
    iterations.fetch_add(its, std::memory_order_relaxed);
  }
};

/// Size above which the full-spectrum routines refuse to run.
inline constexpr long kDefaultDenseCeiling = 2048;

struct EigenOptions {
  double tol = 1e-10;          ///< backward-error residual target
  int max_iter = 5000;         ///< operator applications per extreme
  Backend backend = Backend::Auto;
  std::uint64_t seed = 0x5eed;
  long dense_ceiling = kDefaultDenseCeiling;
  std::shared_ptr<IterationTally> tally;  ///< optional accounting sink

  void validate() const {
    if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "eigen tol must be positive");
    if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
    if (dense_ceiling < 1) throw Error(ErrorCode::InvalidArgument, "dense ceiling must be >= 1");
  }
};

}  // namespace spdcone
