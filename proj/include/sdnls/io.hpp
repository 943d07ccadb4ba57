#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "sdnls/harness.hpp"
#include "sdnls/paths.hpp"

namespace sdnls {

// Field dump: CSV `k,re,im` for |k| <= N.
void write_field_csv(std::ostream& out, const TorusField& f);
TorusField read_field_csv(std::istream& in);

// Path dump: CSV `t,W` at fine-grid resolution.
void write_path_csv(std::ostream& out, const BrownianPath& path);

// Error table: CSV `scheme,tau,delta,N,s,M,error,seed,valid`.
void write_table_csv(std::ostream& out, const ErrorTable& table);
ErrorTable read_table_csv(std::istream& in);

// Kernel debug dump: CSV `k,re,im`.
void write_kernel_csv(std::ostream& out, const KernelTable& table);

/// Exact dyadic time literals (`2^-12`, `3*2^-10`) or decimals snapped to the
/// nearest fine-grid multiple. `snapped` reports whether snapping moved the value.
double parse_time(const std::string& text, double h_fine, bool* snapped = nullptr);

/// `R` literal: `inf`/`infinity` or a real >= 1.
double parse_truncation(const std::string& text);

/// Line-oriented `key = value` config file ('#' comments allowed).
std::map<std::string, std::string> parse_key_value_config(std::istream& in);

/// Command manifest: command name plus every resolved parameter, enough to
/// reproduce the run. Serializes to JSON and round-trips losslessly.
struct RunManifest {
  std::string command;
  std::string version = kVersion;
  std::string timestamp;
  std::uint64_t master_seed = 0;
  std::map<std::string, std::string> params;
  std::vector<std::string> outputs;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);

  bool operator==(const RunManifest&) const = default;
};

std::string current_timestamp();

}  // namespace sdnls
