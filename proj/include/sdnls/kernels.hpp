#pragma once

#include <vector>

#include "sdnls/common.hpp"
#include "sdnls/paths.hpp"

namespace sdnls {

/// Per-step oscillatory multipliers K(k) for |k| <= N. Even in k (dependence on
/// k^2 only), so values are stored for k = 0..N. |K(k)| <= tau and K(0) = tau.
struct KernelTable {
  int N = 0;
  double t_n = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  std::vector<Complex> values;  // index |k|

  Complex at(int k) const {
    const int a = k < 0 ? -k : k;
    if (a > N) throw ConfigError("KernelTable: mode index out of range");
    return values[static_cast<std::size_t>(a)];
  }
};

/// I_{n,tau}(k^2) = integral over [0,tau] of e^{2 i k^2 (B(t_n+s) - B(t_n))} ds,
/// evaluated exactly over the affine pieces of the Wong-Zakai path via phi_1.
KernelTable sdlri_kernel(const WongZakaiPath& path, double t_n, double tau, int N);

/// Exponential-Euler analogue with unit phase factor:
/// J(k^2) = integral over [0,tau] of e^{i k^2 (B(t_n+s) - B(t_n))} ds.
KernelTable expeuler_kernel(const WongZakaiPath& path, double t_n, double tau, int N);

/// Independent quadrature evaluation of the same integral (composite
/// Gauss-Legendre, >= 64 nodes per affine piece, subdivided so that each panel
/// carries a bounded phase range). phase_factor selects e^{i*pf*k^2*psi(s)}.
Complex kernel_oracle(const WongZakaiPath& path, double t_n, double tau, int k, int phase_factor);

}  // namespace sdnls
