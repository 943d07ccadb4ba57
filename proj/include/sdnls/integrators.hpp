#pragma once

#include <functional>
#include <memory>
#include <string>

#include "sdnls/field.hpp"
#include "sdnls/kernels.hpp"
#include "sdnls/paths.hpp"

namespace sdnls {

enum class Scheme { sdlri, lie, expeuler, relaxed_cn, splitstep_ref };
enum class PathSource { wong_zakai, raw_brownian };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct SchemeConfig {
  Scheme scheme = Scheme::sdlri;
  double T = 1.0;
  double tau = 1.0 / 16.0;
  double delta = 1.0 / 4096.0;
  double R = kNoTruncation;
  int N = 128;
  double lambda = 1.0;
  PathSource path_source = PathSource::wong_zakai;
  double cn_tol = 1e-12;
  int cn_max_iter = 200;

  /// Commensurability and range checks against the driving path's fine grid.
  void validate(double h_fine) const;
};

/// Relaxation state for the Crank-Nicolson scheme: phi^{n-1/2} on the padded
/// physical grid.
struct CnState {
  std::vector<double> phi_half;
};

TorusField step_sdlri(const TorusField& u, const KernelTable& kernel, double db, double lambda);
TorusField step_lie(const TorusField& u, double psi_tau, double tau, double lambda);
TorusField step_expeuler(const TorusField& u, const KernelTable& kernel, double psi_tau, double lambda);
TorusField step_relaxed_cn(const TorusField& u, CnState& state, double db, double tau, double lambda,
                           double tol, int max_iter);

/// phi^{-1/2} = |u0|^2 on the padded grid.
CnState make_cn_state(const TorusField& u0);

struct TrajectoryResult {
  TorusField final_state;
  std::int64_t steps = 0;
  /// Largest |l2(u_n) - l2(u_0)| seen along the run (mass leak of the
  /// truncated Lie phase step; identically ~0 for the conservative schemes).
  double mass_drift = 0.0;
};

using SnapshotObserver = std::function<void(std::int64_t step, double t, const TorusField&)>;

/// Applies T/tau steps of the configured scheme to u0 over the given path.
/// Deterministic for fixed (cfg, path, u0). Non-finite values abort with a
/// SolverError naming the step.
TrajectoryResult run_trajectory(const SchemeConfig& cfg, std::shared_ptr<const BrownianPath> path,
                                const TorusField& u0, const SnapshotObserver& observer = nullptr);

}  // namespace sdnls
