#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sdnls {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;

/// Invalid parameters or incompatible grids/bandwidths. Maps to exit code 2 in the CLI.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical failure during time stepping (divergence, iteration stall).
/// Maps to exit code 1 in the CLI.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::int64_t step, double residual = 0.0)
      : std::runtime_error(what), step(step), residual(residual) {}
  std::int64_t step;
  double residual;
};

/// R = +inf disables path truncation.
inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();

/// Ratio a/b as an exact nonnegative integer; throws ConfigError otherwise.
/// Times in this codebase are dyadic multiples of a fine grid spacing, so the
/// ratio is exact in floating point whenever the configuration is legal.
inline std::int64_t exact_ratio(double a, double b, const char* what) {
  if (!(b > 0.0) || !(a >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError(std::string(what) + ": times must be finite and positive");
  }
  const double r = a / b;
  const auto n = static_cast<std::int64_t>(std::llround(r));
  if (n < 0 || std::abs(r - static_cast<double>(n)) > 1e-9 * std::max(1.0, r)) {
    throw ConfigError(std::string(what) + ": " + std::to_string(a) + " is not an integer multiple of " +
                      std::to_string(b));
  }
  return n;
}

inline bool divides(double small, double big) {
  if (!(small > 0.0) || !(big > 0.0)) return false;
  const double r = big / small;
  const auto n = static_cast<std::int64_t>(std::llround(r));
  return n >= 1 && std::abs(r - static_cast<double>(n)) <= 1e-9 * std::max(1.0, r);
}

/// Smallest power of two >= n.
inline int next_pow2(int n) {
  int m = 1;
  while (m < n) m *= 2;
  return m;
}

/// Deterministic per-item seed derivation (splitmix64-style mixing).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sdnls
