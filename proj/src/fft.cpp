#include "sdnls/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace sdnls::fft {
namespace {

// FFTW's planner is not thread-safe; plan creation/destruction is serialized.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanEntry {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit PlanEntry(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~PlanEntry() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
  PlanEntry(const PlanEntry&) = delete;
  PlanEntry& operator=(const PlanEntry&) = delete;
};

PlanEntry& plan_for(int n) {
  thread_local std::map<int, PlanEntry> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(std::piecewise_construct, std::forward_as_tuple(n), std::forward_as_tuple(n)).first;
  return it->second;
}

void execute(std::span<std::complex<double>> data, bool forward_dir) {
  const int n = static_cast<int>(data.size());
  if (n == 0) return;
  PlanEntry& plan = plan_for(n);
  // std::complex<double> is layout-compatible with double[2]
  auto* staged = reinterpret_cast<double*>(plan.buf);
  auto* user = reinterpret_cast<double*>(data.data());
  std::memcpy(staged, user, sizeof(double) * 2 * static_cast<std::size_t>(n));
  fftw_execute(forward_dir ? plan.fwd : plan.bwd);
  std::memcpy(user, staged, sizeof(double) * 2 * static_cast<std::size_t>(n));
}

}  // namespace

void forward(std::span<std::complex<double>> data) { execute(data, true); }
void backward(std::span<std::complex<double>> data) { execute(data, false); }

}  // namespace sdnls::fft
