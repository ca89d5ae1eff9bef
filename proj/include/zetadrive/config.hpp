#pragma once

// Run configuration: line-oriented `key = value` files with `#` comments.

#include <zetadrive/csv.hpp>
#include <zetadrive/errors.hpp>
#include <zetadrive/waveform.hpp>

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <string>

namespace zetadrive {

struct RunConfig {
  double omega = 8.0;
  double e_min = 10.0;
  double e_max = 105.0;
  double e_step = 0.25;
  int shots = -1;  // 0 = noise-free, -1 = 2000 up to E = 100 and 5000 above
  std::uint64_t seed = 1;
  int n_terms = 500;
  int substeps = 8192;
  int n_boot = 4000;
  std::string output_dir = ".";
  double window_scale = 2.0 * std::numbers::pi;
  // Prime reconstruction.
  double x_min = 1.5;
  double x_max = 20.0;
  double x_step = 0.001;
  double zero_limit = 100.0;  // catalogue zeros below this feed h(x)
  double prominence = 0.35;   // fraction of max |h|

  DrivingSpec driving(double E = 0.0) const {
    DrivingSpec s;
    s.E = E;
    s.omega = omega;
    s.n_terms = n_terms;
    s.substeps = substeps;
    s.window_scale = window_scale;
    return s;
  }

  void validate() const {
    if (!(e_step > 0.0)) throw UsageError("config: e_step must be > 0");
    if (!(e_min < e_max)) throw UsageError("config: e_min must be < e_max");
    if (shots < -1) throw UsageError("config: shots must be >= 0 or auto");
    if (n_boot < 1) throw UsageError("config: n_boot must be >= 1");
    if (!(x_min > 1.0) || !(x_max > x_min) || !(x_step > 0.0)) {
      throw UsageError("config: prime grid needs 1 < x_min < x_max and x_step > 0");
    }
    driving().validate();
  }

  /// Apply one `key = value` setting; unknown keys are an error.
  void set(const std::string& key, const std::string& value) {
    auto num = [&] { return csv::parse_double(value); };
    auto integer = [&] { return static_cast<int>(csv::parse_int(value)); };
    if (key == "omega") omega = num();
    else if (key == "e_min") e_min = num();
    else if (key == "e_max") e_max = num();
    else if (key == "e_step") e_step = num();
    else if (key == "shots") shots = value == "auto" ? -1 : integer();
    else if (key == "seed") seed = static_cast<std::uint64_t>(csv::parse_int(value));
    else if (key == "n_terms") n_terms = integer();
    else if (key == "substeps") substeps = integer();
    else if (key == "n_boot") n_boot = integer();
    else if (key == "output_dir") output_dir = value;
    else if (key == "window_scale") window_scale = num();
    else if (key == "x_min") x_min = num();
    else if (key == "x_max") x_max = num();
    else if (key == "x_step") x_step = num();
    else if (key == "zero_limit") zero_limit = num();
    else if (key == "prominence") prominence = num();
    else throw UsageError("config: unknown key '" + key + "'");
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Parse `key = value` lines into `cfg`, returning the keys that were set.
inline std::map<std::string, std::string> parse_config(std::istream& is, RunConfig& cfg) {
  std::map<std::string, std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    cfg.set(key, value);
    seen[key] = value;
  }
  return seen;
}

inline RunConfig load_config(const std::string& path, RunConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  parse_config(in, cfg);
  return cfg;
}

}  // namespace zetadrive
