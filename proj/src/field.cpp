#include "sdnls/field.hpp"

#include <cmath>

#include "sdnls/fft.hpp"

namespace sdnls {

bool TorusField::all_finite() const {
  for (const Complex& v : c_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

TorusField TorusField::embedded(int bandwidth) const {
  if (bandwidth < N_) throw ConfigError("TorusField::embedded: target bandwidth too small");
  TorusField out(bandwidth);
  for (int k = -N_; k <= N_; ++k) out.set(k, at(k));
  return out;
}

std::vector<Complex> to_physical(const TorusField& f, int M) {
  const int N = f.bandwidth();
  if (M < 2 * N + 1) throw ConfigError("to_physical: grid size must be >= 2N+1");
  std::vector<Complex> grid(static_cast<std::size_t>(M), Complex(0.0, 0.0));
  for (int k = -N; k <= N; ++k) {
    const int slot = k >= 0 ? k : M + k;
    grid[static_cast<std::size_t>(slot)] = f.at(k);
  }
  fft::backward(grid);
  return grid;
}

TorusField to_spectral(std::span<const Complex> values, int N) {
  const int M = static_cast<int>(values.size());
  if (M < 2 * N + 1) throw ConfigError("to_spectral: grid size must be >= 2N+1");
  std::vector<Complex> work(values.begin(), values.end());
  fft::forward(work);
  const double inv = 1.0 / static_cast<double>(M);
  TorusField out(N);
  for (int k = -N; k <= N; ++k) {
    const int slot = k >= 0 ? k : M + k;
    out.set(k, work[static_cast<std::size_t>(slot)] * inv);
  }
  return out;
}

TorusField galerkin_project(const TorusField& f, int Np) {
  if (Np < 0) throw ConfigError("galerkin_project: cutoff must be >= 0");
  TorusField out = f;
  for (int k = -f.bandwidth(); k <= f.bandwidth(); ++k) {
    if (std::abs(k) > Np) out.set(k, Complex(0.0, 0.0));
  }
  return out;
}

double sobolev_norm(const TorusField& f, double s) {
  double sum = 0.0;
  for (int k = -f.bandwidth(); k <= f.bandwidth(); ++k) {
    const double w = k == 0 ? 1.0 : 1.0 + std::pow(static_cast<double>(std::abs(k)), 2.0 * s);
    sum += w * std::norm(f.at(k));
  }
  return std::sqrt(sum);
}

double l2_norm(const TorusField& f) {
  double sum = 0.0;
  for (const Complex& v : f.coeffs()) sum += std::norm(v);
  return std::sqrt(sum);
}

TorusField free_propagate(const TorusField& f, double b) {
  TorusField out = f;
  for (int k = -f.bandwidth(); k <= f.bandwidth(); ++k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    out.set(k, f.at(k) * std::exp(Complex(0.0, -kk * b)));
  }
  return out;
}

TorusField cubic(const TorusField& f) {
  const int N = f.bandwidth();
  const int M = dealias_grid_size(N);
  std::vector<Complex> grid = to_physical(f, M);
  for (Complex& v : grid) v = std::norm(v) * v;
  return to_spectral(grid, N);
}

TorusField apply_multiplier(const TorusField& f, const std::function<Complex(int)>& m) {
  TorusField out = f;
  for (int k = -f.bandwidth(); k <= f.bandwidth(); ++k) out.set(k, m(k) * f.at(k));
  return out;
}

TorusField conjugate_field(const TorusField& f) {
  TorusField out(f.bandwidth());
  for (int k = -f.bandwidth(); k <= f.bandwidth(); ++k) out.set(k, std::conj(f.at(-k)));
  return out;
}

Complex phi1(Complex z) {
  if (std::abs(z) < 1e-4) {
    // Degree-6 Taylor polynomial sum_j z^j/(j+1)!; truncation < 1e-28 at the threshold.
    static constexpr double inv_fact[] = {1.0,         1.0 / 2.0,   1.0 / 6.0,  1.0 / 24.0,
                                          1.0 / 120.0, 1.0 / 720.0, 1.0 / 5040.0};
    Complex acc(inv_fact[6], 0.0);
    for (int j = 5; j >= 0; --j) acc = acc * z + inv_fact[j];
    return acc;
  }
  return (std::exp(z) - 1.0) / z;
}

}  // namespace sdnls
