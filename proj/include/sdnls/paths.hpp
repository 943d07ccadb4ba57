#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sdnls/common.hpp"

namespace sdnls {

/// A Brownian sample on the uniform fine grid t_j = j*h_fine, j = 0..T/h_fine.
/// Immutable after construction; the single source of randomness per trajectory.
struct BrownianPath {
  std::uint64_t seed = 0;
  double horizon = 0.0;
  double h_fine = 0.0;
  std::vector<double> samples;  // W(t_j), samples[0] == 0

  std::int64_t steps() const { return static_cast<std::int64_t>(samples.size()) - 1; }

  /// Path value at a fine-grid time.
  double value_at(double t) const;
};

/// Draws W with independent N(0, h_fine) increments. Deterministic per seed.
BrownianPath sample_brownian(std::uint64_t seed, double T, double h_fine);

/// clamp(w, -R*sqrt(t), R*sqrt(t)); identity when R = +inf. Boundary inclusive.
double truncate_value(double w, double t, double R);

/// Piecewise-linear interpolant of the truncated path, knot spacing delta.
/// A view over a shared BrownianPath; immutable and cheap to copy.
class WongZakaiPath {
 public:
  WongZakaiPath(std::shared_ptr<const BrownianPath> base, double delta, double R);

  /// Interpolated truncated value; t may be any real in [0, horizon].
  double eval(double t) const;
  /// eval(t) - eval(s); requires 0 <= s <= t <= horizon.
  double increment(double s, double t) const;
  /// Truncated value at knot l*delta.
  double knot_value(std::int64_t l) const;

  double delta() const { return delta_; }
  double truncation() const { return R_; }
  double horizon() const { return base_->horizon; }
  std::int64_t knots() const { return knots_; }
  const BrownianPath& base() const { return *base_; }

 private:
  std::shared_ptr<const BrownianPath> base_;
  double delta_;
  double R_;
  std::int64_t stride_;  // delta / h_fine
  std::int64_t knots_;   // horizon / delta
};

/// Root-mean-square gap sqrt(E|B^{delta,R}(t) - B(t)|^2) estimated over
/// n_samples independent paths with per-sample seeds derived from master_seed.
double mc_path_error(double delta, double R, double t, int n_samples, std::uint64_t master_seed,
                     double h_fine);

}  // namespace sdnls
