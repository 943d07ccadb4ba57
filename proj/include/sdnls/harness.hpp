#pragma once

#include <string>
#include <vector>

#include "sdnls/integrators.hpp"

namespace sdnls {

enum class DataLabel { H2, H3, H4, Cinf };

std::string data_label_name(DataLabel label);
DataLabel data_label_from_name(const std::string& name);

/// Random low-regularity initial data: uhat_m = <m>^{-theta} U_m with
/// U_m uniform on [0,1] + i[0,1], <0> = 1, rescaled to the target L2 norm.
/// The Cinf label uses exponential decay e^{-|m|} instead of the power law.
struct InitialDataSpec {
  int N = 128;
  DataLabel label = DataLabel::Cinf;
  double theta = 0.0;  // derived from label: s_label + 0.51
  double target_l2 = 0.1;
  std::uint64_t seed = 1;

  static InitialDataSpec make(int N, DataLabel label, double target_l2, std::uint64_t seed);
};

TorusField make_initial_data(const InitialDataSpec& spec);

struct ErrorRow {
  std::string scheme;
  double tau = 0.0;
  double delta = 0.0;
  int N = 0;
  double s = 0.0;
  int samples = 0;
  double error = 0.0;
  std::uint64_t seed = 0;
  bool valid = true;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
  /// Mean-square distance between the tau_ref and 2*tau_ref reference solves;
  /// rows within 10x of this floor are excluded from slope fits.
  double ref_self_error = 0.0;
};

/// Shared knobs for the convergence studies. Desk-scale defaults; the
/// paper-scale settings (N=512, M=60, tau_ref=1e-4) remain selectable.
struct StudyParams {
  std::vector<Scheme> schemes = {Scheme::sdlri, Scheme::expeuler, Scheme::relaxed_cn};
  std::vector<double> tau_grid;   // per-study defaults applied when empty
  std::vector<double> delta_grid; // used by pathwise (one study per delta) and the delta sweep
  double delta = 1.0 / 4096.0;    // 2^-12
  int N = 128;
  int N_ref = 0;  // 0: same as N
  int samples = 20;
  double s = 1.0;
  std::uint64_t master_seed = 2024;
  InitialDataSpec data;
  double T = 1.0;
  double lambda = 1.0;
  double R = kNoTruncation;
  double h_fine = 0.0;   // 0: T * 2^-20
  double tau_ref = 0.0;  // 0: T * 2^-14
  int workers = 1;

  double resolved_h_fine() const { return h_fine > 0.0 ? h_fine : T / 1048576.0; }
  double resolved_tau_ref() const { return tau_ref > 0.0 ? tau_ref : T / 16384.0; }
  int resolved_n_ref() const { return N_ref > 0 ? N_ref : N; }
};

/// Mean-square H^s error at T against the split-step reference on the same
/// Wong-Zakai path, M path samples per row, one reference solve per sample
/// reused across tau and schemes.
ErrorTable strong_error_study(const StudyParams& params);

/// Same error along a single fixed path (sample index 0 of master_seed).
ErrorTable pathwise_study(const StudyParams& params);

/// SDLRI at each (tau, delta) pair against the split-step reference driven by
/// the raw Brownian path, mean square over M samples.
ErrorTable delta_study(const StudyParams& params);

enum class SweepVar { tau, delta };

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;
  int points = 0;
};

/// Least-squares fit of log(error) against log(sweep variable) over the valid
/// rows of one scheme, excluding rows within 10x of the reference floor.
/// Throws ConfigError with fewer than 3 usable rows.
SlopeFit fit_slope(const ErrorTable& table, const std::string& scheme, SweepVar var);

/// H^s distance between two fields (the narrower one is zero-padded).
double hs_distance(const TorusField& a, const TorusField& b, double s);

}  // namespace sdnls
