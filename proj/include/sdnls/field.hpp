#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sdnls/common.hpp"

namespace sdnls {

/// A periodic field on the torus represented by its Fourier coefficients a_k,
/// |k| <= N, so that u(x) = sum_k a_k e^{ikx}. Value type; immutable by convention.
class TorusField {
 public:
  TorusField() = default;
  explicit TorusField(int bandwidth) : N_(bandwidth), c_(static_cast<std::size_t>(2 * bandwidth + 1)) {
    if (bandwidth < 0) throw ConfigError("TorusField: bandwidth must be >= 0");
  }
  TorusField(int bandwidth, std::vector<Complex> coeffs) : N_(bandwidth), c_(std::move(coeffs)) {
    if (bandwidth < 0 || c_.size() != static_cast<std::size_t>(2 * bandwidth + 1)) {
      throw ConfigError("TorusField: coefficient array must have length 2N+1");
    }
  }

  int bandwidth() const { return N_; }
  std::size_t size() const { return c_.size(); }

  Complex at(int k) const { return c_[index(k)]; }
  void set(int k, Complex v) { c_[index(k)] = v; }
  const std::vector<Complex>& coeffs() const { return c_; }
  std::vector<Complex>& coeffs() { return c_; }

  bool all_finite() const;

  /// Same coefficients re-indexed into a (possibly wider) bandwidth.
  TorusField embedded(int bandwidth) const;

 private:
  std::size_t index(int k) const {
    if (k < -N_ || k > N_) throw ConfigError("TorusField: mode index out of range");
    return static_cast<std::size_t>(k + N_);
  }

  int N_ = 0;
  std::vector<Complex> c_{Complex(0.0, 0.0)};
};

/// Grid values u(x_j), x_j = 2*pi*j/M, via zero-padded inverse DFT. Requires M >= 2N+1.
std::vector<Complex> to_physical(const TorusField& f, int M);

/// Forward DFT of grid values, retaining |k| <= N. Requires values.size() >= 2N+1.
TorusField to_spectral(std::span<const Complex> values, int N);

/// Zeroes coefficients with |k| > Np (bandwidth metadata is preserved).
TorusField galerkin_project(const TorusField& f, int Np);

/// sqrt(sum_k w_k |a_k|^2) with w_0 = 1 and w_k = 1 + |k|^{2s} otherwise.
double sobolev_norm(const TorusField& f, double s);

/// sqrt(sum_k |a_k|^2).
double l2_norm(const TorusField& f);

/// e^{i b Laplacian}: a_k -> e^{-i k^2 b} a_k. Unitary in every H^s.
TorusField free_propagate(const TorusField& f, double b);

/// Dealiased cubic term: the Galerkin projection of |u|^2 u, computed exactly
/// on a padded grid (power of two >= 4N+2) so that it equals the direct
/// triple convolution restricted to |k| <= N.
TorusField cubic(const TorusField& f);

/// a_k -> m(k) a_k.
TorusField apply_multiplier(const TorusField& f, const std::function<Complex(int)>& m);

/// Coefficients of the complex conjugate field: b_k = conj(a_{-k}).
TorusField conjugate_field(const TorusField& f);

/// phi_1(z) = (e^z - 1)/z, phi_1(0) = 1. Series branch below |z| = 1e-4
/// avoids cancellation; relative accuracy <= 1e-14 on the imaginary axis.
Complex phi1(Complex z);

/// Padded grid size used for exact dealiasing of triple products.
inline int dealias_grid_size(int N) { return next_pow2(4 * N + 2); }

}  // namespace sdnls
