#include "sdnls/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

namespace sdnls {
namespace {

void run_samples(int count, int workers, const std::function<void(int)>& work) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure = nullptr;
  std::mutex failure_mutex;
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min(workers, count);
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int w = 0; w < n_threads; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> default_tau_grid(double T, int coarsest, int finest) {
  std::vector<double> grid;
  for (int p = coarsest; p <= finest; ++p) grid.push_back(T / static_cast<double>(1LL << p));
  return grid;
}

SchemeConfig base_config(const StudyParams& params, Scheme scheme, double tau, double delta) {
  SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.T = params.T;
  cfg.tau = tau;
  cfg.delta = delta;
  cfg.R = params.R;
  cfg.N = params.N;
  cfg.lambda = params.lambda;
  cfg.path_source = PathSource::wong_zakai;
  return cfg;
}

struct ReferencePair {
  TorusField at_ref;   // splitstep at tau_ref
  TorusField coarse;   // splitstep at 2*tau_ref, for the self-consistency floor
};

ReferencePair solve_reference(const StudyParams& params, PathSource source,
                              std::shared_ptr<const BrownianPath> path, const TorusField& u0) {
  SchemeConfig cfg = base_config(params, Scheme::splitstep_ref, params.resolved_tau_ref(), params.delta);
  cfg.N = params.resolved_n_ref();
  cfg.path_source = source;
  ReferencePair ref;
  ref.at_ref = run_trajectory(cfg, path, u0).final_state;
  cfg.tau = 2.0 * params.resolved_tau_ref();
  ref.coarse = run_trajectory(cfg, path, u0).final_state;
  return ref;
}

}  // namespace

std::string data_label_name(DataLabel label) {
  switch (label) {
    case DataLabel::H2: return "H2";
    case DataLabel::H3: return "H3";
    case DataLabel::H4: return "H4";
    case DataLabel::Cinf: return "Cinf";
  }
  throw ConfigError("unknown data label");
}

DataLabel data_label_from_name(const std::string& name) {
  if (name == "H2") return DataLabel::H2;
  if (name == "H3") return DataLabel::H3;
  if (name == "H4") return DataLabel::H4;
  if (name == "Cinf" || name == "Cinfty" || name == "smooth") return DataLabel::Cinf;
  throw ConfigError("unknown data label '" + name + "' (expected H2, H3, H4 or Cinf)");
}

InitialDataSpec InitialDataSpec::make(int N, DataLabel label, double target_l2, std::uint64_t seed) {
  InitialDataSpec spec;
  spec.N = N;
  spec.label = label;
  spec.target_l2 = target_l2;
  spec.seed = seed;
  switch (label) {
    case DataLabel::H2: spec.theta = 2.51; break;
    case DataLabel::H3: spec.theta = 3.51; break;
    case DataLabel::H4: spec.theta = 4.51; break;
    case DataLabel::Cinf: spec.theta = 0.0; break;
  }
  return spec;
}

TorusField make_initial_data(const InitialDataSpec& spec) {
  if (!(spec.target_l2 > 0.0)) throw ConfigError("initial data: target norm must be positive");
  if (spec.label != DataLabel::Cinf && !(spec.theta > 0.5)) {
    throw ConfigError("initial data: theta must exceed 1/2");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  TorusField field(spec.N);
  for (int m = -spec.N; m <= spec.N; ++m) {
    const Complex u(unif(rng), unif(rng));
    const double am = std::abs(m);
    const double weight = spec.label == DataLabel::Cinf ? std::exp(-2.0 * am)
                                                        : (m == 0 ? 1.0 : std::pow(am, -spec.theta));
    field.set(m, weight * u);
  }
  const double norm = l2_norm(field);
  if (!(norm > 0.0)) throw ConfigError("initial data: degenerate draw");
  const double scale = spec.target_l2 / norm;
  for (Complex& c : field.coeffs()) c *= scale;
  return field;
}

double hs_distance(const TorusField& a, const TorusField& b, double s) {
  const int N = std::max(a.bandwidth(), b.bandwidth());
  TorusField diff(N);
  for (int k = -N; k <= N; ++k) {
    const Complex va = std::abs(k) <= a.bandwidth() ? a.at(k) : Complex(0.0, 0.0);
    const Complex vb = std::abs(k) <= b.bandwidth() ? b.at(k) : Complex(0.0, 0.0);
    diff.set(k, va - vb);
  }
  return sobolev_norm(diff, s);
}

ErrorTable strong_error_study(const StudyParams& params) {
  StudyParams p = params;
  if (p.tau_grid.empty()) p.tau_grid = default_tau_grid(p.T, 4, 9);
  if (p.samples < 2) throw ConfigError("strong study: need at least 2 samples");
  for (double tau : p.tau_grid) {
    if (!divides(p.delta, tau) && !divides(tau, p.delta)) {
      throw ConfigError("strong study: every tau must be commensurable with delta");
    }
  }
  const double h = p.resolved_h_fine();
  const TorusField u0 = make_initial_data(p.data);

  const std::size_t n_rows = p.schemes.size() * p.tau_grid.size();
  std::vector<std::vector<double>> sq(n_rows, std::vector<double>(static_cast<std::size_t>(p.samples), 0.0));
  std::vector<std::vector<char>> ok(n_rows, std::vector<char>(static_cast<std::size_t>(p.samples), 1));
  std::vector<double> floor_sq(static_cast<std::size_t>(p.samples), 0.0);

  run_samples(p.samples, p.workers, [&](int m) {
    auto path = std::make_shared<const BrownianPath>(
        sample_brownian(derive_seed(p.master_seed, static_cast<std::uint64_t>(m)), p.T, h));
    const ReferencePair ref = solve_reference(p, PathSource::wong_zakai, path, u0);
    floor_sq[static_cast<std::size_t>(m)] = std::pow(hs_distance(ref.at_ref, ref.coarse, p.s), 2);
    std::size_t row = 0;
    for (Scheme scheme : p.schemes) {
      for (double tau : p.tau_grid) {
        try {
          const SchemeConfig cfg = base_config(p, scheme, tau, p.delta);
          const TorusField u = run_trajectory(cfg, path, u0).final_state;
          sq[row][static_cast<std::size_t>(m)] = std::pow(hs_distance(ref.at_ref, u, p.s), 2);
        } catch (const SolverError&) {
          ok[row][static_cast<std::size_t>(m)] = 0;
        }
        ++row;
      }
    }
  });

  ErrorTable table;
  double floor_acc = 0.0;
  for (int m = 0; m < p.samples; ++m) floor_acc += floor_sq[static_cast<std::size_t>(m)];
  table.ref_self_error = std::sqrt(floor_acc / static_cast<double>(p.samples));

  std::size_t row = 0;
  for (Scheme scheme : p.schemes) {
    for (double tau : p.tau_grid) {
      ErrorRow r;
      r.scheme = scheme_name(scheme);
      r.tau = tau;
      r.delta = p.delta;
      r.N = p.N;
      r.s = p.s;
      r.samples = p.samples;
      r.seed = p.master_seed;
      double acc = 0.0;
      int good = 0;
      for (int m = 0; m < p.samples; ++m) {
        if (ok[row][static_cast<std::size_t>(m)]) {
          acc += sq[row][static_cast<std::size_t>(m)];
          ++good;
        }
      }
      r.valid = good == p.samples;
      r.error = good > 0 ? std::sqrt(acc / static_cast<double>(good)) : std::nan("");
      table.rows.push_back(std::move(r));
      ++row;
    }
  }
  return table;
}

ErrorTable pathwise_study(const StudyParams& params) {
  StudyParams p = params;
  if (p.tau_grid.empty()) p.tau_grid = default_tau_grid(p.T, 4, 9);
  const double h = p.resolved_h_fine();
  const TorusField u0 = make_initial_data(p.data);

  auto path = std::make_shared<const BrownianPath>(sample_brownian(derive_seed(p.master_seed, 0), p.T, h));
  const ReferencePair ref = solve_reference(p, PathSource::wong_zakai, path, u0);

  ErrorTable table;
  table.ref_self_error = hs_distance(ref.at_ref, ref.coarse, p.s);
  for (Scheme scheme : p.schemes) {
    for (double tau : p.tau_grid) {
      if (!divides(p.delta, tau) && !divides(tau, p.delta)) continue;
      ErrorRow r;
      r.scheme = scheme_name(scheme);
      r.tau = tau;
      r.delta = p.delta;
      r.N = p.N;
      r.s = p.s;
      r.samples = 1;
      r.seed = p.master_seed;
      try {
        const SchemeConfig cfg = base_config(p, scheme, tau, p.delta);
        r.error = hs_distance(ref.at_ref, run_trajectory(cfg, path, u0).final_state, p.s);
      } catch (const SolverError&) {
        r.valid = false;
        r.error = std::nan("");
      }
      table.rows.push_back(std::move(r));
    }
  }
  return table;
}

ErrorTable delta_study(const StudyParams& params) {
  StudyParams p = params;
  if (p.tau_grid.empty()) p.tau_grid = {p.T / 8.0, p.T / 128.0, p.T / 1024.0};
  if (p.delta_grid.empty()) {
    for (int q = 3; q <= 12; ++q) p.delta_grid.push_back(p.T / static_cast<double>(1LL << q));
  }
  const double h = p.resolved_h_fine();
  const TorusField u0 = make_initial_data(p.data);

  struct Cell {
    double tau, delta;
  };
  std::vector<Cell> cells;
  for (double tau : p.tau_grid) {
    for (double delta : p.delta_grid) {
      if (divides(delta, tau) || divides(tau, delta)) cells.push_back({tau, delta});
    }
  }

  std::vector<std::vector<double>> sq(cells.size(), std::vector<double>(static_cast<std::size_t>(p.samples), 0.0));
  std::vector<std::vector<char>> ok(cells.size(), std::vector<char>(static_cast<std::size_t>(p.samples), 1));
  std::vector<double> floor_sq(static_cast<std::size_t>(p.samples), 0.0);

  run_samples(p.samples, p.workers, [&](int m) {
    auto path = std::make_shared<const BrownianPath>(
        sample_brownian(derive_seed(p.master_seed, static_cast<std::uint64_t>(m)), p.T, h));
    StudyParams ref_params = p;
    ref_params.delta = p.resolved_tau_ref();  // the raw reference takes no Wong-Zakai knots
    const ReferencePair ref = solve_reference(ref_params, PathSource::raw_brownian, path, u0);
    floor_sq[static_cast<std::size_t>(m)] = std::pow(hs_distance(ref.at_ref, ref.coarse, p.s), 2);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        const SchemeConfig cfg = base_config(p, Scheme::sdlri, cells[c].tau, cells[c].delta);
        const TorusField u = run_trajectory(cfg, path, u0).final_state;
        sq[c][static_cast<std::size_t>(m)] = std::pow(hs_distance(ref.at_ref, u, p.s), 2);
      } catch (const SolverError&) {
        ok[c][static_cast<std::size_t>(m)] = 0;
      }
    }
  });

  ErrorTable table;
  double floor_acc = 0.0;
  for (int m = 0; m < p.samples; ++m) floor_acc += floor_sq[static_cast<std::size_t>(m)];
  table.ref_self_error = std::sqrt(floor_acc / static_cast<double>(p.samples));

  for (std::size_t c = 0; c < cells.size(); ++c) {
    ErrorRow r;
    r.scheme = scheme_name(Scheme::sdlri);
    r.tau = cells[c].tau;
    r.delta = cells[c].delta;
    r.N = p.N;
    r.s = p.s;
    r.samples = p.samples;
    r.seed = p.master_seed;
    double acc = 0.0;
    int good = 0;
    for (int m = 0; m < p.samples; ++m) {
      if (ok[c][static_cast<std::size_t>(m)]) {
        acc += sq[c][static_cast<std::size_t>(m)];
        ++good;
      }
    }
    r.valid = good == p.samples;
    r.error = good > 0 ? std::sqrt(acc / static_cast<double>(good)) : std::nan("");
    table.rows.push_back(std::move(r));
  }
  return table;
}

SlopeFit fit_slope(const ErrorTable& table, const std::string& scheme, SweepVar var) {
  std::vector<double> lx, ly;
  for (const ErrorRow& r : table.rows) {
    if (r.scheme != scheme || !r.valid) continue;
    if (!(r.error > 0.0) || !std::isfinite(r.error)) continue;
    if (table.ref_self_error > 0.0 && r.error < 10.0 * table.ref_self_error) continue;
    lx.push_back(std::log(var == SweepVar::tau ? r.tau : r.delta));
    ly.push_back(std::log(r.error));
  }
  if (lx.size() < 3) {
    throw ConfigError("fit_slope: fewer than 3 usable rows for scheme '" + scheme + "'");
  }
  const auto n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  SlopeFit fit;
  fit.points = static_cast<int>(lx.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double d = ly[i] - (fit.slope * lx[i] + intercept);
    rss += d * d;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace sdnls
