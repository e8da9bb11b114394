#pragma once

// Sweep configuration and its flat "key = value" text format.
//
// Settings are layered: defaults, then each layer in order (params file,
// config file, command-line flags), later layers winning. Keys use
// underscores; the matching command-line flag uses dashes (loe_min <->
// --loe-min).

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "oscillation.hpp"

namespace nuqrt {

/// Configuration problem attributable to one key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : describe(key) + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

  static std::string flag_name(std::string_view key) {
    std::string flag = "--";
    for (char c : key) flag += (c == '_') ? '-' : c;
    return flag;
  }

 private:
  static std::string describe(const std::string& key) { return key + " (" + flag_name(key) + ")"; }
  std::string key_;
};

enum class Spacing { linear, log };

inline std::string_view to_string(Spacing s) { return s == Spacing::linear ? "linear" : "log"; }

inline constexpr std::size_t kMaxSweepPoints = 10'000'000;

struct SweepConfig {
  Flavor flavor = Flavor::e;
  double loe_min = 0.0;
  double loe_max = 40.0;
  LoeUnits units = LoeUnits::km_per_MeV;
  std::size_t points = 4001;
  Spacing spacing = Spacing::linear;
  OscillationParams params = default_params();
  std::string output_path;  // empty: no file
};

/// Electron: 0-40 km/MeV linear. Muon: 10-1000 km/GeV logarithmic.
inline SweepConfig default_config(Flavor flavor) {
  SweepConfig c;
  c.flavor = flavor;
  if (flavor == Flavor::mu) {
    c.loe_min = 10.0;
    c.loe_max = 1000.0;
    c.units = LoeUnits::km_per_GeV;
    c.points = 1000;
    c.spacing = Spacing::log;
  }
  return c;
}

inline void validate(const SweepConfig& c) {
  if (c.flavor == Flavor::tau) throw ConfigError("flavor", "sweeps start from e or mu");
  if (!std::isfinite(c.loe_min) || c.loe_min < 0.0)
    throw ConfigError("loe_min", "must be finite and >= 0");
  if (!std::isfinite(c.loe_max)) throw ConfigError("loe_max", "must be finite");
  if (!(c.loe_min < c.loe_max)) throw ConfigError("loe_max", "must exceed loe_min");
  if (c.spacing == Spacing::log && !(c.loe_min > 0.0))
    throw ConfigError("loe_min", "log spacing requires loe_min > 0");
  if (c.points < 2) throw ConfigError("points", "need at least 2 points");
  if (c.points > kMaxSweepPoints) throw ConfigError("points", "more than 10^7 points");
  try {
    validate(c.params);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.field(), e.reason());
  }
}

/// Ordered key -> raw value map for one settings layer.
using Settings = std::map<std::string, std::string>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, std::string_view text) {
  const std::string_view t = trim(text);
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw ConfigError(key, "malformed number '" + std::string(text) + "'");
  return v;
}

inline std::size_t parse_count(const std::string& key, std::string_view text) {
  const std::string_view t = trim(text);
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(key, "malformed count '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

inline Flavor parse_flavor(const std::string& key, std::string_view text) {
  const auto t = trim(text);
  if (t == "e") return Flavor::e;
  if (t == "mu") return Flavor::mu;
  throw ConfigError(key, "expected 'e' or 'mu', got '" + std::string(text) + "'");
}

inline LoeUnits parse_units(const std::string& key, std::string_view text) {
  const auto t = trim(text);
  if (t == "km_per_GeV") return LoeUnits::km_per_GeV;
  if (t == "km_per_MeV") return LoeUnits::km_per_MeV;
  throw ConfigError(key, "expected 'km_per_GeV' or 'km_per_MeV', got '" + std::string(text) + "'");
}

inline Spacing parse_spacing(const std::string& key, std::string_view text) {
  const auto t = trim(text);
  if (t == "linear") return Spacing::linear;
  if (t == "log") return Spacing::log;
  throw ConfigError(key, "expected 'linear' or 'log', got '" + std::string(text) + "'");
}

inline double* param_slot(OscillationParams& p, std::string_view key) {
  if (key == "theta12") return &p.theta12;
  if (key == "theta23") return &p.theta23;
  if (key == "theta13") return &p.theta13;
  if (key == "delta_cp") return &p.delta_cp;
  if (key == "alpha1") return &p.alpha1;
  if (key == "alpha2") return &p.alpha2;
  if (key == "dm21_sq") return &p.dm21_sq;
  if (key == "dm31_sq") return &p.dm31_sq;
  if (key == "dm32_sq") return &p.dm32_sq;
  return nullptr;
}

}  // namespace detail

inline const std::vector<std::string>& param_keys() {
  static const std::vector<std::string> keys{"theta12", "theta23", "theta13", "delta_cp", "alpha1",
                                             "alpha2",  "dm21_sq", "dm31_sq", "dm32_sq"};
  return keys;
}

inline const std::vector<std::string>& sweep_keys() {
  static const std::vector<std::string> keys{"flavor",  "loe_min", "loe_max", "points",
                                             "spacing", "units",   "output"};
  return keys;
}

inline bool is_param_key(std::string_view key) {
  OscillationParams scratch;
  return detail::param_slot(scratch, key) != nullptr;
}

inline bool is_config_key(std::string_view key) {
  for (const auto& k : sweep_keys())
    if (k == key) return true;
  return is_param_key(key);
}

/// Parses "key = value" lines; '#' starts a comment. Unknown keys, missing
/// '=' and duplicates are rejected with the source name and line number.
/// With `params_only`, only oscillation parameter keys are accepted.
inline Settings parse_settings(std::string_view text, std::string_view source = "<input>",
                               bool params_only = false) {
  Settings out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", where + ": expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", where + ": empty key");
    const bool known = params_only ? is_param_key(key) : is_config_key(key);
    if (!known) throw ConfigError(key, where + ": unknown key");
    if (out.count(key)) throw ConfigError(key, where + ": duplicate key");
    out.emplace(key, value);
  }
  return out;
}

inline Settings read_settings_file(const std::string& path, bool params_only = false) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read settings file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_settings(ss.str(), path, params_only);
}

/// Builds a validated SweepConfig from layers ordered lowest priority first.
inline SweepConfig parse_config(const std::vector<Settings>& layers) {
  Settings merged;
  for (const auto& layer : layers)
    for (const auto& [k, v] : layer) {
      if (!is_config_key(k)) throw ConfigError(k, "unknown key");
      merged[k] = v;
    }

  Flavor flavor = Flavor::e;
  if (auto it = merged.find("flavor"); it != merged.end())
    flavor = detail::parse_flavor(it->first, it->second);
  SweepConfig c = default_config(flavor);

  for (const auto& [k, v] : merged) {
    if (k == "flavor") continue;
    if (k == "loe_min") c.loe_min = detail::parse_double(k, v);
    else if (k == "loe_max") c.loe_max = detail::parse_double(k, v);
    else if (k == "points") c.points = detail::parse_count(k, v);
    else if (k == "spacing") c.spacing = detail::parse_spacing(k, v);
    else if (k == "units") c.units = detail::parse_units(k, v);
    else if (k == "output") c.output_path = v;
    else *detail::param_slot(c.params, k) = detail::parse_double(k, v);
  }
  validate(c);
  return c;
}

/// "key = value" lines for every oscillation parameter; readable back by
/// parse_settings.
inline std::string format_params(const OscillationParams& p) {
  std::string out;
  OscillationParams copy = p;
  for (const auto& key : param_keys()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", *detail::param_slot(copy, key));
    out += key + " = " + buf + "\n";
  }
  return out;
}

}  // namespace nuqrt
