// Command-line front end: single simulations, path dumps, and the four
// convergence-study kinds, with `key = value` config files and JSON manifests.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "sdnls/harness.hpp"
#include "sdnls/io.hpp"

namespace fs = std::filesystem;
using namespace sdnls;

namespace {

struct RawArgs {
  std::map<std::string, std::string> flags;  // only flags given on the command line
  std::map<std::string, std::string> config; // from --config, flags win
};

// Resolution order: command line, config file, built-in default.
class Resolver {
 public:
  Resolver(RawArgs args, RunManifest& manifest) : args_(std::move(args)), manifest_(manifest) {}

  std::string str(const std::string& key, const std::string& fallback) {
    std::string value = fallback;
    if (auto it = args_.config.find(key); it != args_.config.end()) value = it->second;
    if (auto it = args_.flags.find(key); it != args_.flags.end()) value = it->second;
    manifest_.params[key] = value;
    return value;
  }

  double time(const std::string& key, const std::string& fallback, double h_fine) {
    bool snapped = false;
    const double v = parse_time(str(key, fallback), h_fine, &snapped);
    if (snapped) {
      std::cerr << "warning: " << key << " snapped to the nearest fine-grid multiple " << v << "\n";
      std::ostringstream ss;
      ss.precision(17);
      ss << v;
      manifest_.params[key] = ss.str();
    }
    return v;
  }

  std::vector<double> time_list(const std::string& key, const std::string& fallback, double h_fine) {
    const std::string text = str(key, fallback);
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      bool snapped = false;
      values.push_back(parse_time(item, h_fine, &snapped));
      if (snapped) std::cerr << "warning: " << key << " entry " << item << " snapped to " << values.back() << "\n";
    }
    if (values.empty()) throw ConfigError(key + ": empty list");
    return values;
  }

  long integer(const std::string& key, const std::string& fallback) {
    return std::stol(str(key, fallback));
  }
  double real(const std::string& key, const std::string& fallback) {
    return std::stod(str(key, fallback));
  }
  std::uint64_t seed(const std::string& key, const std::string& fallback) {
    return std::stoull(str(key, fallback));
  }

 private:
  RawArgs args_;
  RunManifest& manifest_;
};

RawArgs collect_args(const CLI::App& cmd) {
  RawArgs out;
  for (const CLI::Option* opt : cmd.get_options()) {
    const std::string name = opt->get_name();
    if (name.rfind("--", 0) != 0 || opt->count() == 0) continue;
    out.flags[name.substr(2)] = opt->as<std::string>();
  }
  if (auto it = out.flags.find("config"); it != out.flags.end()) {
    std::ifstream in(it->second);
    if (!in) throw ConfigError("cannot open config file " + it->second);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      out.config = RunManifest::from_json(text).params;  // re-run from a manifest
    } else {
      std::stringstream ss(text);
      out.config = parse_key_value_config(ss);
    }
  }
  return out;
}

void write_manifest(const RunManifest& manifest, const fs::path& path) {
  std::ofstream out(path);
  out << manifest.to_json() << "\n";
}

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  return dir;
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
  std::vector<Scheme> schemes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) schemes.push_back(scheme_from_name(item));
  if (schemes.empty()) throw ConfigError("--scheme: empty list");
  return schemes;
}

void add_common_flags(CLI::App* cmd) {
  for (const char* name : {"--scheme", "--T", "--tau", "--delta", "--R", "--N", "--lambda", "--seed",
                           "--samples", "--data", "--norm-s", "--workers", "--out", "--config",
                           "--h-fine", "--tau-ref", "--n-ref", "--target-l2", "--path-source",
                           "--snapshots"}) {
    cmd->add_option(name)->expected(1);
  }
}

int cmd_paths(const CLI::App& cmd) {
  RunManifest manifest;
  manifest.command = "paths";
  manifest.timestamp = current_timestamp();
  Resolver r(collect_args(cmd), manifest);

  const double T = r.time("T", "1", 0.0);
  const double h_fine = r.time("h-fine", "2^-12", 0.0);
  const double delta = r.time("delta", "2^-4", h_fine);
  const double R = parse_truncation(r.str("R", "inf"));
  const std::uint64_t seed = r.seed("seed", "1");
  manifest.master_seed = seed;
  const fs::path dir = ensure_out_dir(r.str("out", "."));

  if (std::isfinite(R) && R < std::sqrt(8.0 * std::abs(std::log(delta)))) {
    std::cerr << "warning: finite R = " << R << " is below sqrt(8|ln delta|); the sqrt(delta) "
              << "interpolation error bound is not guaranteed\n";
  }

  auto base = std::make_shared<const BrownianPath>(sample_brownian(seed, T, h_fine));
  const WongZakaiPath wz(base, delta, R);
  BrownianPath dump = *base;  // reuse the t,W layout for the interpolated values
  for (std::size_t j = 0; j < dump.samples.size(); ++j) {
    dump.samples[j] = wz.eval(static_cast<double>(j) * h_fine);
  }
  const fs::path csv = dir / "path.csv";
  std::ofstream out(csv);
  write_path_csv(out, dump);
  manifest.outputs.push_back(csv.string());
  write_manifest(manifest, dir / "path_manifest.json");
  std::cout << "wrote " << csv.string() << "\n";
  return 0;
}

int cmd_simulate(const CLI::App& cmd) {
  RunManifest manifest;
  manifest.command = "simulate";
  manifest.timestamp = current_timestamp();
  Resolver r(collect_args(cmd), manifest);

  const double T = r.time("T", "1", 0.0);
  const double h_fine = r.time("h-fine", "2^-20", 0.0);
  SchemeConfig cfg;
  cfg.scheme = scheme_from_name(r.str("scheme", "sdlri"));
  cfg.T = T;
  cfg.tau = r.time("tau", "2^-6", h_fine);
  cfg.delta = r.time("delta", "2^-12", h_fine);
  cfg.R = parse_truncation(r.str("R", "inf"));
  cfg.N = static_cast<int>(r.integer("N", "128"));
  cfg.lambda = r.real("lambda", "1");
  cfg.path_source = r.str("path-source", "wong_zakai") == "raw_brownian" ? PathSource::raw_brownian
                                                                         : PathSource::wong_zakai;
  cfg.validate(h_fine);

  const std::uint64_t seed = r.seed("seed", "2024");
  manifest.master_seed = seed;
  const DataLabel label = data_label_from_name(r.str("data", "Cinf"));
  const double target_l2 = r.real("target-l2", "0.1");
  const double norm_s = r.real("norm-s", "1");
  const fs::path dir = ensure_out_dir(r.str("out", "."));

  if (std::isfinite(cfg.R) && cfg.R < std::sqrt(8.0 * std::abs(std::log(cfg.delta)))) {
    std::cerr << "warning: finite R = " << cfg.R << " is below sqrt(8|ln delta|)\n";
  }

  const InitialDataSpec data = InitialDataSpec::make(cfg.N, label, target_l2, derive_seed(seed, 999983));
  const TorusField u0 = make_initial_data(data);
  auto path = std::make_shared<const BrownianPath>(sample_brownian(derive_seed(seed, 0), T, h_fine));

  SnapshotObserver observer;
  if (r.str("snapshots", "0") != "0") {
    observer = [&dir2 = dir, &manifest](std::int64_t step, double, const TorusField& u) {
      char name[32];
      std::snprintf(name, sizeof(name), "field_%05lld.csv", static_cast<long long>(step));
      const fs::path file = dir2 / name;
      std::ofstream snap(file);
      write_field_csv(snap, u);
      manifest.outputs.push_back(file.string());
    };
  }
  const TrajectoryResult result = run_trajectory(cfg, path, u0, observer);

  const fs::path csv = dir / "field.csv";
  std::ofstream out(csv);
  write_field_csv(out, result.final_state);
  manifest.outputs.push_back(csv.string());
  write_manifest(manifest, dir / "manifest.json");
  std::cout << "steps " << result.steps << "  final H^" << norm_s << " norm "
            << sobolev_norm(result.final_state, norm_s) << "  mass drift " << result.mass_drift << "\n";
  std::cout << "wrote " << csv.string() << "\n";
  return 0;
}

void print_slopes(const ErrorTable& table, const std::vector<Scheme>& schemes, SweepVar var,
                  const std::string& qualifier = "") {
  for (Scheme scheme : schemes) {
    const std::string name = scheme_name(scheme);
    try {
      const SlopeFit fit = fit_slope(table, name, var);
      std::cout << "slope " << name << qualifier << " = " << fit.slope << "  (residual " << fit.residual
                << ", " << fit.points << " points)\n";
    } catch (const ConfigError& e) {
      std::cout << "slope " << name << qualifier << " = n/a  (" << e.what() << ")\n";
    }
  }
}

int cmd_study(const std::string& kind, const CLI::App& cmd) {
  RunManifest manifest;
  manifest.command = "study " + kind;
  manifest.timestamp = current_timestamp();
  Resolver r(collect_args(cmd), manifest);

  StudyParams params;
  params.T = r.time("T", "1", 0.0);
  params.h_fine = r.time("h-fine", "2^-20", 0.0);
  params.N = static_cast<int>(r.integer("N", "128"));
  params.N_ref = static_cast<int>(r.integer("n-ref", "0"));
  params.lambda = r.real("lambda", "1");
  params.R = parse_truncation(r.str("R", "inf"));
  params.s = r.real("norm-s", "1");
  params.samples = static_cast<int>(r.integer("samples", "20"));
  params.workers = static_cast<int>(r.integer("workers", "1"));
  params.tau_ref = r.time("tau-ref", "2^-14", params.h_fine);
  const double target_l2 = r.real("target-l2", "0.1");

  ErrorTable table;
  std::string default_data = "H2";
  std::string default_seed = "2024";

  if (std::isfinite(params.R)) {
    std::cerr << "warning: finite R selected; the sqrt(delta) interpolation error bound requires "
              << "R >= sqrt(8|ln delta|)\n";
  }

  if (kind == "deterministic") {
    default_data = "Cinf";
    default_seed = "32";  // moderate dispersion draw: every scheme in its asymptotic regime, errors above the floor
    params.master_seed = r.seed("seed", default_seed);
    params.schemes = parse_scheme_list(r.str("scheme", "sdlri,lie,expeuler,relaxed_cn"));
    params.tau_grid = r.time_list("tau", "2^-4,2^-5,2^-6,2^-7,2^-8,2^-9,2^-10", params.h_fine);
    params.delta = r.time("delta", "1", params.h_fine);
    params.data = InitialDataSpec::make(params.N, data_label_from_name(r.str("data", default_data)),
                                        target_l2, derive_seed(params.master_seed, 999983));
    table = pathwise_study(params);
    print_slopes(table, params.schemes, SweepVar::tau);
  } else if (kind == "strong") {
    params.master_seed = r.seed("seed", default_seed);
    params.schemes = parse_scheme_list(r.str("scheme", "sdlri,expeuler,relaxed_cn"));
    params.tau_grid = r.time_list("tau", "2^-4,2^-5,2^-6,2^-7,2^-8,2^-9", params.h_fine);
    params.delta = r.time("delta", "2^-12", params.h_fine);
    params.data = InitialDataSpec::make(params.N, data_label_from_name(r.str("data", default_data)),
                                        target_l2, derive_seed(params.master_seed, 999983));
    table = strong_error_study(params);
    print_slopes(table, params.schemes, SweepVar::tau);
  } else if (kind == "pathwise") {
    params.master_seed = r.seed("seed", default_seed);
    params.schemes = parse_scheme_list(r.str("scheme", "sdlri,lie"));
    params.tau_grid = r.time_list("tau", "2^-4,2^-5,2^-6,2^-7,2^-8,2^-9", params.h_fine);
    params.data = InitialDataSpec::make(params.N, data_label_from_name(r.str("data", default_data)),
                                        target_l2, derive_seed(params.master_seed, 999983));
    for (double delta : r.time_list("delta", "2^-6,2^-9,2^-12", params.h_fine)) {
      StudyParams per = params;
      per.delta = delta;
      const ErrorTable part = pathwise_study(per);
      table.ref_self_error = std::max(table.ref_self_error, part.ref_self_error);
      std::cout << "delta = " << delta << ":\n";
      print_slopes(part, per.schemes, SweepVar::tau);
      table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
    }
  } else if (kind == "delta-sweep") {
    params.master_seed = r.seed("seed", default_seed);
    params.schemes = {Scheme::sdlri};
    params.data = InitialDataSpec::make(params.N, data_label_from_name(r.str("data", default_data)),
                                        target_l2, derive_seed(params.master_seed, 999983));
    params.tau_grid.clear();
    for (double tau : r.time_list("tau", "0.1,0.01,0.001", 0.0)) {
      // the sweep needs dyadic tau so that dyadic delta values divide it
      const double dyadic = std::ldexp(1.0, static_cast<int>(std::lround(std::log2(tau))));
      if (dyadic != tau) std::cerr << "warning: tau " << tau << " snapped to dyadic " << dyadic << "\n";
      params.tau_grid.push_back(dyadic);
    }
    params.delta_grid = r.time_list("delta", "2^-3,2^-4,2^-5,2^-6,2^-7,2^-8,2^-9,2^-10,2^-11,2^-12",
                                    params.h_fine);
    table = delta_study(params);
    for (double tau : params.tau_grid) {
      std::cout << "tau = " << tau << ": errors";
      for (const ErrorRow& row : table.rows) {
        if (row.tau == tau) std::cout << ' ' << row.error;
      }
      std::cout << "\n";
    }
  } else {
    throw ConfigError("unknown study kind '" + kind + "' (deterministic, strong, pathwise, delta-sweep)");
  }

  manifest.master_seed = params.master_seed;
  {
    std::ostringstream ss;
    ss.precision(17);
    ss << table.ref_self_error;
    manifest.params["ref-self-error"] = ss.str();
  }
  const fs::path dir = ensure_out_dir(r.str("out", "."));
  const fs::path csv = dir / (kind + "_table.csv");
  std::ofstream out(csv);
  write_table_csv(out, table);
  manifest.outputs.push_back(csv.string());
  write_manifest(manifest, dir / (kind + "_manifest.json"));
  std::cout << "wrote " << csv.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral solver suite for the cubic Schrodinger equation with white noise dispersion"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CLI::App* simulate = app.add_subcommand("simulate", "Run one trajectory and dump the final field");
  add_common_flags(simulate);

  CLI::App* study = app.add_subcommand("study", "Run a convergence study and export the error table");
  add_common_flags(study);
  std::string kind;
  study->add_option("kind", kind, "deterministic | strong | pathwise | delta-sweep")->required();

  CLI::App* paths = app.add_subcommand("paths", "Sample a Brownian path and dump its interpolant");
  add_common_flags(paths);

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(*simulate);
    if (study->parsed()) return cmd_study(kind, *study);
    if (paths->parsed()) return cmd_paths(*paths);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
