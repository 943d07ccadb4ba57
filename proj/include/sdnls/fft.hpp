#pragma once

#include <complex>
#include <span>

namespace sdnls::fft {

// In-place complex DFTs backed by FFTW. Unnormalized: backward(forward(x)) == n*x.
// Plans are cached per thread; FFTW's planner is guarded internally, so these
// are safe to call from concurrent trajectory workers.
void forward(std::span<std::complex<double>> data);   // X_m = sum_j x_j e^{-2pi i jm/n}
void backward(std::span<std::complex<double>> data);  // X_j = sum_m x_m e^{+2pi i jm/n}

}  // namespace sdnls::fft
