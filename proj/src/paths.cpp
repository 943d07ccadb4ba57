#include "sdnls/paths.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sdnls {

double BrownianPath::value_at(double t) const {
  if (t < 0.0 || t > horizon * (1.0 + 1e-12)) {
    throw ConfigError("path evaluation outside [0, T]");
  }
  const std::int64_t j = exact_ratio(t, h_fine, "path time");
  return samples.at(static_cast<std::size_t>(j));
}

BrownianPath sample_brownian(std::uint64_t seed, double T, double h_fine) {
  if (!(T > 0.0) || !(h_fine > 0.0)) {
    throw ConfigError("sample_brownian: T and h_fine must be positive");
  }
  const std::int64_t n = exact_ratio(T, h_fine, "T/h_fine");
  if (n < 1) throw ConfigError("sample_brownian: T/h_fine must be >= 1");

  BrownianPath path;
  path.seed = seed;
  path.horizon = T;
  path.h_fine = h_fine;
  path.samples.resize(static_cast<std::size_t>(n) + 1);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double root_h = std::sqrt(h_fine);
  double w = 0.0;
  path.samples[0] = 0.0;
  for (std::int64_t j = 1; j <= n; ++j) {
    w += root_h * normal(rng);
    path.samples[static_cast<std::size_t>(j)] = w;
  }
  return path;
}

double truncate_value(double w, double t, double R) {
  if (std::isinf(R)) return w;
  const double bound = R * std::sqrt(t);
  return std::clamp(w, -bound, bound);
}

WongZakaiPath::WongZakaiPath(std::shared_ptr<const BrownianPath> base, double delta, double R)
    : base_(std::move(base)), delta_(delta), R_(R) {
  if (!base_) throw ConfigError("WongZakaiPath: null base path");
  if (!(R_ >= 1.0)) throw ConfigError("WongZakaiPath: R must be >= 1 or +inf");
  stride_ = exact_ratio(delta_, base_->h_fine, "delta/h_fine");
  if (stride_ < 1) throw ConfigError("WongZakaiPath: delta must be >= h_fine");
  knots_ = exact_ratio(base_->horizon, delta_, "T/delta");
  if (knots_ < 1) throw ConfigError("WongZakaiPath: delta must divide the horizon");
}

double WongZakaiPath::knot_value(std::int64_t l) const {
  const double t = static_cast<double>(l) * delta_;
  return truncate_value(base_->samples.at(static_cast<std::size_t>(l * stride_)), t, R_);
}

double WongZakaiPath::eval(double t) const {
  const double T = base_->horizon;
  if (t < -1e-15 || t > T * (1.0 + 1e-12)) {
    throw ConfigError("WongZakaiPath::eval: t outside [0, T]");
  }
  t = std::clamp(t, 0.0, T);
  auto l = static_cast<std::int64_t>(std::floor(t / delta_));
  if (l >= knots_) l = knots_;  // t == T lands on the last knot
  const double t0 = static_cast<double>(l) * delta_;
  const double alpha = (t - t0) / delta_;
  const double v0 = knot_value(l);
  if (alpha == 0.0) return v0;
  const double v1 = knot_value(l + 1);
  return v0 + alpha * (v1 - v0);
}

double WongZakaiPath::increment(double s, double t) const {
  if (s > t) throw ConfigError("WongZakaiPath::increment: s > t");
  return eval(t) - eval(s);
}

double mc_path_error(double delta, double R, double t, int n_samples, std::uint64_t master_seed,
                     double h_fine) {
  if (n_samples < 100) throw ConfigError("mc_path_error: need at least 100 samples");
  exact_ratio(delta, h_fine, "delta/h_fine");
  const std::int64_t jt = exact_ratio(t, h_fine, "t/h_fine");
  // Horizon one knot past t so the interpolant is defined at t.
  const std::int64_t per_knot = exact_ratio(delta, h_fine, "delta/h_fine");
  const std::int64_t n_fine = ((jt + per_knot - 1) / per_knot + 1) * per_knot;
  const double T = static_cast<double>(n_fine) * h_fine;

  double sum_sq = 0.0;
  for (int m = 0; m < n_samples; ++m) {
    auto path = std::make_shared<const BrownianPath>(
        sample_brownian(derive_seed(master_seed, static_cast<std::uint64_t>(m)), T, h_fine));
    const WongZakaiPath wz(path, delta, R);
    const double gap = wz.eval(t) - path->samples.at(static_cast<std::size_t>(jt));
    sum_sq += gap * gap;
  }
  return std::sqrt(sum_sq / static_cast<double>(n_samples));
}

}  // namespace sdnls
