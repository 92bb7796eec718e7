#pragma once

// Flat key=value scenario files. One key per line, '#' starts a comment.
//
//   p0, delta, d, gamma, env, t_end, dt, stride, mode, out    (run and sweep)
//   axis1, axis2 = name:start:stop:count, workers              (sweep only)

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spindyn/model.hpp"

namespace spindyn {

enum class RunMode { Numeric, Analytic, Both };

std::string_view to_string(RunMode mode);
RunMode parse_run_mode(std::string_view name);

struct Scenario {
  double p0 = 0.5;
  ModelParams params;
  EnvSpec env;
  double t_end = 10.0;
  double dt = 1e-3;
  int stride = 10;
  RunMode mode = RunMode::Numeric;
  std::string output_path;  ///< empty or "-" means stdout

  /// Throws Error(Config) on any invariant violation.
  void validate() const;
  std::string describe() const;
};

struct SweepAxis {
  std::string name;  ///< one of delta, d, gamma, p, t
  double start = 0.0;
  double stop = 0.0;
  int count = 2;

  std::vector<double> values() const;
};

struct SweepGrid {
  SweepAxis axis1;
  SweepAxis axis2;
  Scenario base;
  int workers = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

using ConfigMap = std::map<std::string, std::string, std::less<>>;

/// Keys recognised in config files and as --key=value overrides.
const std::vector<std::string>& config_keys();

ConfigMap parse_config_text(std::string_view text);
ConfigMap load_config_file(const std::filesystem::path& path);

/// Later entries win.
ConfigMap merge(ConfigMap base, const ConfigMap& overrides);

Scenario scenario_from_config(const ConfigMap& config);
SweepAxis parse_axis(std::string_view spec);
SweepGrid sweep_from_config(const ConfigMap& config);

}  // namespace spindyn
