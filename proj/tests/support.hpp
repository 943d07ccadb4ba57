#pragma once

// Test-only oracles and statistical helpers. Everything here is independent of
// the implementation paths it is used to check: the convolution and step
// oracles are direct Fourier-sum evaluations, the path statistics work on raw
// sample arrays.

#include <complex>
#include <random>
#include <vector>

#include "sdnls/field.hpp"
#include "sdnls/harness.hpp"
#include "sdnls/kernels.hpp"
#include "sdnls/paths.hpp"

namespace sdnls::testing {

/// Direct O(N^3) evaluation of the Galerkin-projected cubic term:
/// out_k = sum_{k2+k3-k1 = k, all |.| <= N} conj(a_{k1}) a_{k2} a_{k3}.
inline TorusField cubic_oracle(const TorusField& f) {
  const int N = f.bandwidth();
  TorusField out(N);
  for (int k = -N; k <= N; ++k) {
    Complex acc(0.0, 0.0);
    for (int k1 = -N; k1 <= N; ++k1) {
      for (int k2 = -N; k2 <= N; ++k2) {
        const int k3 = k + k1 - k2;
        if (k3 < -N || k3 > N) continue;
        acc += std::conj(f.at(k1)) * f.at(k2) * f.at(k3);
      }
    }
    out.set(k, acc);
  }
  return out;
}

/// Direct Fourier-sum form of one resonance-integrator step:
/// uhat_k^{n+1} = e^{-i db k^2} [uhat_k + i lambda sum_{k+k1=k2+k3} I(k1^2)
///                conj(uhat_{k1}) uhat_{k2} uhat_{k3}].
inline TorusField sdlri_step_oracle(const TorusField& u, const KernelTable& kernel, double db,
                                    double lambda) {
  const int N = u.bandwidth();
  TorusField out(N);
  for (int k = -N; k <= N; ++k) {
    Complex acc(0.0, 0.0);
    for (int k1 = -N; k1 <= N; ++k1) {
      for (int k2 = -N; k2 <= N; ++k2) {
        const int k3 = k + k1 - k2;
        if (k3 < -N || k3 > N) continue;
        acc += kernel.at(k1) * std::conj(u.at(k1)) * u.at(k2) * u.at(k3);
      }
    }
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    out.set(k, std::exp(Complex(0.0, -kk * db)) * (u.at(k) + Complex(0.0, lambda) * acc));
  }
  return out;
}

/// (e^z - 1)/z evaluated in extended precision; resolves the branch seam at
/// |z| = 1e-4 to ~5e-16 relative, far below the 1e-14 agreement being checked.
inline Complex phi1_reference(Complex z) {
  const std::complex<long double> zl(z.real(), z.imag());
  const std::complex<long double> r = (std::exp(zl) - 1.0L) / zl;
  return Complex(static_cast<double>(r.real()), static_cast<double>(r.imag()));
}

inline TorusField random_field(int N, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  TorusField f(N);
  for (int k = -N; k <= N; ++k) f.set(k, scale * Complex(unif(rng), unif(rng)));
  return f;
}

/// Random field with |a_k| ~ <k>^{-decay}, rescaled to a given H^s norm.
inline TorusField random_decay_field(int N, std::uint64_t seed, double decay, double hs_norm, double s) {
  TorusField f = random_field(N, seed);
  for (int k = -N; k <= N; ++k) {
    const double w = k == 0 ? 1.0 : std::pow(std::abs(static_cast<double>(k)), -decay);
    f.set(k, f.at(k) * w);
  }
  const double n0 = sobolev_norm(f, s);
  for (Complex& c : f.coeffs()) c *= hs_norm / n0;
  return f;
}

struct HolderFitResult {
  double constant = 0.0;  // max over pairs of RMS gap / max(|t-s|, delta)^(1/2)
};

/// Monte Carlo check of the interpolant continuity estimate:
/// sqrt(E|B^d(t) - B^d(s)|^2) <= C max(|t-s|, delta)^{1/2}.
inline HolderFitResult wz_holder_fit(double delta, double R, const std::vector<std::pair<double, double>>& pairs,
                                     int n_samples, std::uint64_t master_seed, double T, double h_fine) {
  std::vector<double> sum_sq(pairs.size(), 0.0);
  for (int m = 0; m < n_samples; ++m) {
    auto path = std::make_shared<const BrownianPath>(
        sample_brownian(derive_seed(master_seed, static_cast<std::uint64_t>(m)), T, h_fine));
    const WongZakaiPath wz(path, delta, R);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double gap = wz.eval(pairs[i].second) - wz.eval(pairs[i].first);
      sum_sq[i] += gap * gap;
    }
  }
  HolderFitResult result;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double rms = std::sqrt(sum_sq[i] / static_cast<double>(n_samples));
    const double bound = std::sqrt(std::max(std::abs(pairs[i].second - pairs[i].first), delta));
    result.constant = std::max(result.constant, rms / bound);
  }
  return result;
}

/// Largest ratio of the propagator-difference norm to its predicted bound,
/// over n_samples paths at fixed evaluation times:
/// ||(e^{i D db} - e^{i D dw}) psi||_{H^s} vs
/// (|gap(t1)|^{g/2} + |gap(t2)|^{g/2}) ||psi||_{H^{s+g}}.
inline double propagator_gap_fit(const TorusField& psi, double s, double gamma, double delta, double R,
                                 double t1, double t2, int n_samples, std::uint64_t master_seed, double T,
                                 double h_fine) {
  double worst = 0.0;
  const double psi_high = sobolev_norm(psi, s + gamma);
  for (int m = 0; m < n_samples; ++m) {
    auto path = std::make_shared<const BrownianPath>(
        sample_brownian(derive_seed(master_seed, static_cast<std::uint64_t>(m)), T, h_fine));
    const WongZakaiPath wz(path, delta, R);
    const double db = path->value_at(t1) - path->value_at(t2);
    const double dw = wz.eval(t1) - wz.eval(t2);
    const double lhs = hs_distance(free_propagate(psi, db), free_propagate(psi, dw), s);
    const double g1 = std::pow(std::abs(path->value_at(t1) - wz.eval(t1)), gamma / 2.0);
    const double g2 = std::pow(std::abs(path->value_at(t2) - wz.eval(t2)), gamma / 2.0);
    const double rhs = (g1 + g2) * psi_high;
    if (rhs > 1e-14) worst = std::max(worst, lhs / rhs);
  }
  return worst;
}

/// Slope of log(rms) vs log(delta) for the interpolant error at fixed t.
inline double path_error_slope(const std::vector<double>& deltas, double R, double t, int n_samples,
                               std::uint64_t master_seed, double h_fine) {
  std::vector<double> lx, ly;
  for (double d : deltas) {
    const double rms = mc_path_error(d, R, t, n_samples, master_seed, h_fine);
    lx.push_back(std::log(d));
    ly.push_back(std::log(rms));
  }
  const auto n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sdnls::testing
