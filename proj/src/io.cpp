#include "sdnls/io.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace sdnls {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

void write_field_csv(std::ostream& out, const TorusField& f) {
  out << "k,re,im\n";
  out << std::setprecision(17);
  for (int k = -f.bandwidth(); k <= f.bandwidth(); ++k) {
    out << k << ',' << f.at(k).real() << ',' << f.at(k).imag() << '\n';
  }
}

TorusField read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "k,re,im") {
    throw ConfigError("field csv: missing 'k,re,im' header");
  }
  std::vector<std::pair<int, Complex>> entries;
  int max_k = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 3) throw ConfigError("field csv: malformed row '" + line + "'");
    const int k = std::stoi(parts[0]);
    entries.emplace_back(k, Complex(std::stod(parts[1]), std::stod(parts[2])));
    max_k = std::max(max_k, std::abs(k));
  }
  TorusField f(max_k);
  for (const auto& [k, v] : entries) f.set(k, v);
  return f;
}

void write_path_csv(std::ostream& out, const BrownianPath& path) {
  out << "t,W\n";
  out << std::setprecision(17);
  for (std::size_t j = 0; j < path.samples.size(); ++j) {
    out << static_cast<double>(j) * path.h_fine << ',' << path.samples[j] << '\n';
  }
}

void write_table_csv(std::ostream& out, const ErrorTable& table) {
  out << "scheme,tau,delta,N,s,M,error,seed,valid\n";
  out << std::setprecision(17);
  for (const ErrorRow& r : table.rows) {
    out << r.scheme << ',' << r.tau << ',' << r.delta << ',' << r.N << ',' << r.s << ',' << r.samples << ','
        << r.error << ',' << r.seed << ',' << (r.valid ? 1 : 0) << '\n';
  }
}

ErrorTable read_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "scheme,tau,delta,N,s,M,error,seed,valid") {
    throw ConfigError("table csv: unexpected header");
  }
  ErrorTable table;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 9) throw ConfigError("table csv: malformed row '" + line + "'");
    ErrorRow r;
    r.scheme = parts[0];
    r.tau = std::stod(parts[1]);
    r.delta = std::stod(parts[2]);
    r.N = std::stoi(parts[3]);
    r.s = std::stod(parts[4]);
    r.samples = std::stoi(parts[5]);
    r.error = std::stod(parts[6]);
    r.seed = std::stoull(parts[7]);
    r.valid = std::stoi(parts[8]) != 0;
    table.rows.push_back(std::move(r));
  }
  return table;
}

void write_kernel_csv(std::ostream& out, const KernelTable& table) {
  out << "k,re,im\n";
  out << std::setprecision(17);
  for (int k = -table.N; k <= table.N; ++k) {
    out << k << ',' << table.at(k).real() << ',' << table.at(k).imag() << '\n';
  }
}

double parse_time(const std::string& text, double h_fine, bool* snapped) {
  if (snapped) *snapped = false;
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty time literal");

  // `2^-12` and `m*2^-12` are exact dyadics.
  const auto caret = s.find('^');
  if (caret != std::string::npos) {
    double mantissa = 1.0;
    std::string base = s.substr(0, caret);
    const auto star = base.find('*');
    if (star != std::string::npos) {
      mantissa = std::stod(base.substr(0, star));
      base = base.substr(star + 1);
    }
    if (trim(base) != "2") throw ConfigError("time literal '" + s + "': only base 2 is supported");
    const int expo = std::stoi(s.substr(caret + 1));
    return mantissa * std::ldexp(1.0, expo);
  }

  double value = 0.0;
  try {
    std::size_t pos = 0;
    value = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("trailing characters in time literal '" + s + "'");
  } catch (const std::exception&) {
    throw ConfigError("cannot parse time literal '" + s + "'");
  }
  if (!(h_fine > 0.0)) return value;
  const double snapped_value = std::round(value / h_fine) * h_fine;
  if (snapped && snapped_value != value) *snapped = true;
  return snapped_value;
}

double parse_truncation(const std::string& text) {
  const std::string s = trim(text);
  if (s == "inf" || s == "infinity" || s == "Inf" || s == "+inf") return kNoTruncation;
  const double r = std::stod(s);
  if (!(r >= 1.0)) throw ConfigError("R must be >= 1 or inf");
  return r;
}

std::map<std::string, std::string> parse_key_value_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["master_seed"] = master_seed;
  j["params"] = params;
  j["outputs"] = outputs;
  return j.dump(2);
}

RunManifest RunManifest::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.params = j.at("params").get<std::map<std::string, std::string>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  return m;
}

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

}  // namespace sdnls
