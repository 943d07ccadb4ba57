#include "sdnls/kernels.hpp"

#include <array>
#include <cmath>

#include "sdnls/field.hpp"

namespace sdnls {
namespace {

// Breakpoints of [t_n, t_n + tau] at the interpolation knots strictly inside,
// so the path is affine on every piece. Commensurability of tau, delta and t_n
// with the fine grid is the caller's contract; either tau | delta (the step
// sits inside one knot interval) or delta | tau (the step is a whole number of
// knot intervals).
std::vector<double> affine_breakpoints(const WongZakaiPath& path, double t_n, double tau) {
  if (!(tau > 0.0)) throw ConfigError("kernel: tau must be positive");
  const double t_end = t_n + tau;
  if (t_n < 0.0 || t_end > path.horizon() * (1.0 + 1e-12)) {
    throw ConfigError("kernel: step interval outside the path horizon");
  }
  const double delta = path.delta();
  if (!divides(tau, delta) && !divides(delta, tau)) {
    throw ConfigError("kernel: tau and delta must be commensurable (one divides the other)");
  }
  std::vector<double> pts;
  pts.push_back(t_n);
  auto l = static_cast<std::int64_t>(std::floor(t_n / delta)) + 1;
  for (; static_cast<double>(l) * delta < t_end - 1e-12 * tau; ++l) {
    const double knot = static_cast<double>(l) * delta;
    if (knot > t_n + 1e-12 * tau) pts.push_back(knot);
  }
  pts.push_back(t_end);
  return pts;
}

KernelTable phase_integral(const WongZakaiPath& path, double t_n, double tau, int N, int phase_factor) {
  const std::vector<double> pts = affine_breakpoints(path, t_n, tau);
  const std::size_t pieces = pts.size() - 1;

  // Path differences anchored at t_n to keep trig arguments small.
  const double b0 = path.eval(t_n);
  std::vector<double> rel(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) rel[i] = path.eval(pts[i]) - b0;

  KernelTable table;
  table.N = N;
  table.t_n = t_n;
  table.tau = tau;
  table.delta = path.delta();
  table.values.resize(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    const double pf_kk = static_cast<double>(phase_factor) * static_cast<double>(k) * static_cast<double>(k);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < pieces; ++i) {
      const double len = pts[i + 1] - pts[i];
      acc += len * std::exp(Complex(0.0, pf_kk * rel[i])) * phi1(Complex(0.0, pf_kk * (rel[i + 1] - rel[i])));
    }
    table.values[static_cast<std::size_t>(k)] = acc;
  }
  return table;
}

// 64-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre64 {
  std::array<double, 64> node{};
  std::array<double, 64> weight{};
  GaussLegendre64() {
    constexpr int n = 64;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      node[static_cast<std::size_t>(i)] = x;
      weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

}  // namespace

KernelTable sdlri_kernel(const WongZakaiPath& path, double t_n, double tau, int N) {
  return phase_integral(path, t_n, tau, N, 2);
}

KernelTable expeuler_kernel(const WongZakaiPath& path, double t_n, double tau, int N) {
  return phase_integral(path, t_n, tau, N, 1);
}

Complex kernel_oracle(const WongZakaiPath& path, double t_n, double tau, int k, int phase_factor) {
  static const GaussLegendre64 gl;
  const std::vector<double> pts = affine_breakpoints(path, t_n, tau);
  const double b0 = path.eval(t_n);
  const double pf_kk = static_cast<double>(phase_factor) * static_cast<double>(k) * static_cast<double>(k);

  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    // Subdivide so each panel sees a modest phase range; 64 nodes then give
    // quadrature error far below 1e-12.
    const double phase_range = std::abs(pf_kk * (path.eval(b) - path.eval(a)));
    const int panels = std::max<int>(1, static_cast<int>(std::ceil(phase_range / 16.0)));
    const double h = (b - a) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
      const double lo = a + h * static_cast<double>(p);
      const double mid = lo + 0.5 * h;
      for (int q = 0; q < 64; ++q) {
        const double s = mid + 0.5 * h * gl.node[static_cast<std::size_t>(q)];
        const double psi = path.eval(s) - b0;
        acc += 0.5 * h * gl.weight[static_cast<std::size_t>(q)] * std::exp(Complex(0.0, pf_kk * psi));
      }
    }
  }
  return acc;
}

}  // namespace sdnls
