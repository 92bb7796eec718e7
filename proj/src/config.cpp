#include "spindyn/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spindyn/error.hpp"
#include "spindyn/evolve.hpp"

namespace spindyn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    config_error("key '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    config_error("key '" + std::string(key) + "': '" + std::string(text) + "' is not an integer");
  return value;
}

template <typename Fn>
void with_key(const ConfigMap& config, std::string_view key, Fn&& fn) {
  if (const auto it = config.find(key); it != config.end()) fn(it->second);
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Numeric: return "numeric";
    case RunMode::Analytic: return "analytic";
    case RunMode::Both: return "both";
  }
  return "numeric";
}

RunMode parse_run_mode(std::string_view name) {
  if (name == "numeric") return RunMode::Numeric;
  if (name == "analytic") return RunMode::Analytic;
  if (name == "both") return RunMode::Both;
  config_error("unknown mode '" + std::string(name) + "' (expected numeric|analytic|both)");
}

void Scenario::validate() const {
  if (!(p0 >= 0.0 && p0 <= 1.0)) config_error("p0 must lie in [0, 1]");
  if (!(t_end > 0.0)) config_error("t_end must be > 0");
  if (!(dt > 0.0 && dt <= kMaxStep)) config_error("dt must lie in (0, 0.01]");
  if (stride < 1) config_error("stride must be >= 1");
  try {
    params.validate();
    env.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
}

std::string Scenario::describe() const {
  std::ostringstream os;
  os << "env=" << to_string(env.kind) << " gamma=" << env.gamma << " p0=" << p0
     << " delta=" << params.delta << " d=" << params.d << " t_end=" << t_end << " dt=" << dt;
  return os.str();
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    // Endpoints exact; interior points by linear interpolation.
    const double frac = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
    out[static_cast<std::size_t>(i)] = i == count - 1 ? stop : start + (stop - start) * frac;
  }
  return out;
}

namespace {

void check_axis(const SweepAxis& axis) {
  static const std::vector<std::string> kNames{"delta", "d", "gamma", "p", "t"};
  if (std::find(kNames.begin(), kNames.end(), axis.name) == kNames.end())
    config_error("sweep axis '" + axis.name + "' not in {delta, d, gamma, p, t}");
  if (axis.count < 2) config_error("sweep axis '" + axis.name + "' needs count >= 2");
  if (axis.name == "t" && (axis.start < 0.0 || axis.stop < axis.start))
    config_error("time axis must be non-decreasing from t >= 0");
}

}  // namespace

void SweepGrid::validate() const {
  check_axis(axis1);
  check_axis(axis2);
  if (axis1.name == axis2.name) config_error("sweep axes must differ");
  if (workers < 0) config_error("workers must be >= 0");
  Scenario probe = base;
  // Axis values override the base; check each corner.
  for (double v1 : {axis1.start, axis1.stop}) {
    for (double v2 : {axis2.start, axis2.stop}) {
      for (const auto& [name, v] : {std::pair{axis1.name, v1}, std::pair{axis2.name, v2}}) {
        if (name == "delta") probe.params.delta = v;
        if (name == "d") probe.params.d = v;
        if (name == "gamma") probe.env.gamma = v;
        if (name == "p") probe.p0 = v;
      }
      probe.validate();
      probe = base;
    }
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"p0",  "delta",  "d",    "gamma", "env",
                                             "t_end", "dt",   "stride", "mode", "out",
                                             "axis1", "axis2", "workers"};
  return keys;
}

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap out;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      config_error("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      config_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    out[key] = value;
  }
  return out;
}

ConfigMap load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

ConfigMap merge(ConfigMap base, const ConfigMap& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
  return base;
}

Scenario scenario_from_config(const ConfigMap& config) {
  Scenario s;
  with_key(config, "p0", [&](const std::string& v) { s.p0 = parse_double("p0", v); });
  with_key(config, "delta", [&](const std::string& v) { s.params.delta = parse_double("delta", v); });
  with_key(config, "d", [&](const std::string& v) { s.params.d = parse_double("d", v); });
  with_key(config, "gamma", [&](const std::string& v) { s.env.gamma = parse_double("gamma", v); });
  with_key(config, "env", [&](const std::string& v) { s.env.kind = parse_env_kind(v); });
  with_key(config, "t_end", [&](const std::string& v) { s.t_end = parse_double("t_end", v); });
  with_key(config, "dt", [&](const std::string& v) { s.dt = parse_double("dt", v); });
  with_key(config, "stride", [&](const std::string& v) { s.stride = parse_int("stride", v); });
  with_key(config, "mode", [&](const std::string& v) { s.mode = parse_run_mode(v); });
  with_key(config, "out", [&](const std::string& v) { s.output_path = v; });
  s.validate();
  return s;
}

SweepAxis parse_axis(std::string_view spec) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto colon = spec.find(':');
    parts.push_back(trim(spec.substr(0, colon)));
    if (colon == std::string_view::npos) break;
    spec = spec.substr(colon + 1);
  }
  if (parts.size() != 4) config_error("axis must be name:start:stop:count");
  SweepAxis axis{std::string(parts[0]), parse_double("axis start", parts[1]),
                 parse_double("axis stop", parts[2]), parse_int("axis count", parts[3])};
  check_axis(axis);
  return axis;
}

SweepGrid sweep_from_config(const ConfigMap& config) {
  SweepGrid g;
  g.base = scenario_from_config(config);
  const auto a1 = config.find("axis1");
  const auto a2 = config.find("axis2");
  if (a1 == config.end() || a2 == config.end()) config_error("sweep needs axis1 and axis2");
  g.axis1 = parse_axis(a1->second);
  g.axis2 = parse_axis(a2->second);
  with_key(config, "workers", [&](const std::string& v) { g.workers = parse_int("workers", v); });
  g.validate();
  return g;
}

}  // namespace spindyn
