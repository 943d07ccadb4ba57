#include "sdnls/integrators.hpp"

#include <cmath>

#include "sdnls/fft.hpp"

namespace sdnls {
namespace {

// pi_N(f * g * h) for bandwidth-N inputs, exact on the padded grid.
TorusField dealiased_triple_product(const TorusField& f, const TorusField& g, const TorusField& h) {
  const int N = f.bandwidth();
  const int M = dealias_grid_size(N);
  std::vector<Complex> a = to_physical(f, M);
  const std::vector<Complex> b = to_physical(g, M);
  const std::vector<Complex> c = to_physical(h, M);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j] * c[j];
  return to_spectral(a, N);
}

void check_bandwidth(const TorusField& u, const KernelTable& kernel) {
  if (u.bandwidth() != kernel.N) {
    throw ConfigError("step: kernel bandwidth does not match the field");
  }
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::sdlri: return "sdlri";
    case Scheme::lie: return "lie";
    case Scheme::expeuler: return "expeuler";
    case Scheme::relaxed_cn: return "relaxed_cn";
    case Scheme::splitstep_ref: return "splitstep_ref";
  }
  throw ConfigError("unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "sdlri") return Scheme::sdlri;
  if (name == "lie") return Scheme::lie;
  if (name == "expeuler") return Scheme::expeuler;
  if (name == "relaxed_cn") return Scheme::relaxed_cn;
  if (name == "splitstep_ref") return Scheme::splitstep_ref;
  throw ConfigError("unknown scheme '" + name + "'");
}

void SchemeConfig::validate(double h_fine) const {
  if (!(T > 0.0)) throw ConfigError("config: T must be positive");
  if (!std::isfinite(lambda)) throw ConfigError("config: lambda must be finite");
  if (N < 1) throw ConfigError("config: N must be >= 1");
  if (!(R >= 1.0)) throw ConfigError("config: R must be >= 1 or +inf");
  if (cn_max_iter < 1) throw ConfigError("config: cn_max_iter must be >= 1");
  exact_ratio(T, tau, "T/tau");
  exact_ratio(tau, h_fine, "tau/h_fine");
  exact_ratio(delta, h_fine, "delta/h_fine");
  exact_ratio(T, delta, "T/delta");
  if (!divides(delta, tau) && !divides(tau, delta)) {
    throw ConfigError("config: delta does not divide tau (nor tau delta)");
  }
}

TorusField step_sdlri(const TorusField& u, const KernelTable& kernel, double db, double lambda) {
  check_bandwidth(u, kernel);
  const TorusField weighted_conj =
      apply_multiplier(conjugate_field(u), [&kernel](int k) { return kernel.at(k); });
  const TorusField nonlinear = dealiased_triple_product(u, u, weighted_conj);
  TorusField out = u;
  for (int k = -u.bandwidth(); k <= u.bandwidth(); ++k) {
    out.set(k, u.at(k) + Complex(0.0, lambda) * nonlinear.at(k));
  }
  return free_propagate(out, db);
}

TorusField step_lie(const TorusField& u, double psi_tau, double tau, double lambda) {
  const int N = u.bandwidth();
  const int M = dealias_grid_size(N);
  std::vector<Complex> grid = to_physical(u, M);
  for (Complex& v : grid) v *= std::exp(Complex(0.0, tau * lambda * std::norm(v)));
  return free_propagate(to_spectral(grid, N), psi_tau);
}

TorusField step_expeuler(const TorusField& u, const KernelTable& kernel, double psi_tau, double lambda) {
  check_bandwidth(u, kernel);
  const TorusField weighted = apply_multiplier(cubic(u), [&kernel](int k) { return kernel.at(k); });
  TorusField out = u;
  for (int k = -u.bandwidth(); k <= u.bandwidth(); ++k) {
    out.set(k, u.at(k) + Complex(0.0, lambda) * weighted.at(k));
  }
  return free_propagate(out, psi_tau);
}

CnState make_cn_state(const TorusField& u0) {
  const int M = dealias_grid_size(u0.bandwidth());
  const std::vector<Complex> grid = to_physical(u0, M);
  CnState state;
  state.phi_half.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) state.phi_half[j] = std::norm(grid[j]);
  return state;
}

TorusField step_relaxed_cn(const TorusField& u, CnState& state, double db, double tau, double lambda,
                           double tol, int max_iter) {
  const int N = u.bandwidth();
  const int M = dealias_grid_size(N);
  if (state.phi_half.size() != static_cast<std::size_t>(M)) {
    throw ConfigError("relaxed_cn: state grid does not match the field bandwidth");
  }
  const std::vector<Complex> u_grid = to_physical(u, M);

  // phi^{n+1/2} = 2|u^n|^2 - phi^{n-1/2}
  std::vector<double> phi(state.phi_half.size());
  for (std::size_t j = 0; j < phi.size(); ++j) phi[j] = 2.0 * std::norm(u_grid[j]) - state.phi_half[j];

  // Diagonal part: D_k u^{n+1} = (1 - i/2 db k^2) u^n + i tau lambda/2 * pi_N((u^{m} + u^n) phi)
  std::vector<Complex> rhs0(static_cast<std::size_t>(2 * N + 1));
  std::vector<Complex> dinv(rhs0.size());
  for (int k = -N; k <= N; ++k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    const std::size_t i = static_cast<std::size_t>(k + N);
    rhs0[i] = u.at(k) * Complex(1.0, -0.5 * db * kk);
    dinv[i] = 1.0 / Complex(1.0, 0.5 * db * kk);
  }

  TorusField cur = u;
  double change = 0.0;
  for (int m = 0; m < max_iter; ++m) {
    std::vector<Complex> prod = to_physical(cur, M);
    for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = (prod[j] + u_grid[j]) * phi[j];
    const TorusField coupled = to_spectral(prod, N);

    TorusField next(N);
    for (int k = -N; k <= N; ++k) {
      const std::size_t i = static_cast<std::size_t>(k + N);
      next.set(k, dinv[i] * (rhs0[i] + Complex(0.0, 0.5 * tau * lambda) * coupled.at(k)));
    }

    change = 0.0;
    for (int k = -N; k <= N; ++k) change += std::norm(next.at(k) - cur.at(k));
    change = std::sqrt(change);
    cur = next;
    if (change < tol) {
      state.phi_half = std::move(phi);
      return cur;
    }
  }
  throw SolverError("relaxed_cn: fixed-point iteration did not converge", -1, change);
}

TrajectoryResult run_trajectory(const SchemeConfig& cfg, std::shared_ptr<const BrownianPath> path,
                                const TorusField& u0, const SnapshotObserver& observer) {
  if (!path) throw ConfigError("run_trajectory: null path");
  if (path->horizon < cfg.T * (1.0 - 1e-12)) throw ConfigError("run_trajectory: path horizon shorter than T");
  cfg.validate(path->h_fine);
  if (u0.bandwidth() > cfg.N) throw ConfigError("run_trajectory: u0 bandwidth exceeds cfg.N");

  const std::int64_t K = exact_ratio(cfg.T, cfg.tau, "T/tau");
  const WongZakaiPath wz(path, cfg.delta, cfg.R);

  const bool raw = cfg.scheme == Scheme::splitstep_ref && cfg.path_source == PathSource::raw_brownian;
  const bool cn_raw = cfg.scheme == Scheme::relaxed_cn && cfg.path_source == PathSource::raw_brownian;
  auto increment = [&](double a, double b) {
    if (raw || cn_raw) return path->value_at(b) - path->value_at(a);
    return wz.increment(a, b);
  };

  TorusField u = u0.bandwidth() == cfg.N ? u0 : u0.embedded(cfg.N);
  const double mass0 = l2_norm(u);
  CnState cn_state;
  if (cfg.scheme == Scheme::relaxed_cn) cn_state = make_cn_state(u);

  TrajectoryResult result;
  if (observer) observer(0, 0.0, u);
  for (std::int64_t n = 0; n < K; ++n) {
    const double t_n = static_cast<double>(n) * cfg.tau;
    const double t_next = static_cast<double>(n + 1) * cfg.tau;
    const double db = increment(t_n, t_next);
    switch (cfg.scheme) {
      case Scheme::sdlri:
        u = step_sdlri(u, sdlri_kernel(wz, t_n, cfg.tau, cfg.N), db, cfg.lambda);
        break;
      case Scheme::expeuler:
        u = step_expeuler(u, expeuler_kernel(wz, t_n, cfg.tau, cfg.N), db, cfg.lambda);
        break;
      case Scheme::lie:
      case Scheme::splitstep_ref:
        u = step_lie(u, db, cfg.tau, cfg.lambda);
        break;
      case Scheme::relaxed_cn:
        try {
          u = step_relaxed_cn(u, cn_state, db, cfg.tau, cfg.lambda, cfg.cn_tol, cfg.cn_max_iter);
        } catch (const SolverError& e) {
          throw SolverError(std::string(e.what()) + " at step " + std::to_string(n), n, e.residual);
        }
        break;
    }
    if (!u.all_finite()) {
      throw SolverError("trajectory diverged (non-finite coefficients) at step " + std::to_string(n + 1),
                        n + 1, 0.0);
    }
    result.mass_drift = std::max(result.mass_drift, std::abs(l2_norm(u) - mass0));
    if (observer) observer(n + 1, t_next, u);
  }
  result.final_state = std::move(u);
  result.steps = K;
  return result;
}

}  // namespace sdnls
