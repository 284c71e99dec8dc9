#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace madelung::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(trim(part));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

long parse_integer(const std::string& text, const std::string& what) {
  long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(what + ": not an integer: '" + text + "'");
  }
  return v;
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
  return v;
}

std::vector<double> AxisSpec::values() const {
  if (grid) return grid->points();
  return {value};
}

GridSpec AxisSpec::require_grid(const std::string& name) const {
  if (!grid) throw ConfigError(name + ": expected a grid start:stop:count[:log]");
  return *grid;
}

AxisSpec parse_axis(const std::string& text) {
  const std::vector<std::string> parts = split(trim(text), ':');
  if (parts.size() == 1) {
    AxisSpec a;
    a.value = parse_double(parts[0], "grid");
    return a;
  }
  GridSpec g;
  if (parts.size() < 3 || parts.size() > 4) {
    throw ConfigError("grid: expected start:stop:count[:log], got '" + text + "'");
  }
  g.start = parse_double(parts[0], "grid start");
  g.stop = parse_double(parts[1], "grid stop");
  const long count = parse_integer(parts[2], "grid count");
  if (count < 2) throw ConfigError("grid: count must be >= 2, got '" + text + "'");
  g.count = static_cast<std::size_t>(count);
  if (parts.size() == 4) {
    if (parts[3] != "log") throw ConfigError("grid: unknown spacing '" + parts[3] + "'");
    g.spacing = Spacing::log;
  }
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid '") + text + "': " + e.what());
  }
  return AxisSpec{g, 0.0};
}

void RunConfig::validate() const {
  try {
    params.validate();
    consts.validate();
    accuracy.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
  if (!(fd_step > 0.0) || !(quantum_step > 0.0) || !(q_fd_step > 0.0)) {
    throw ConfigError("finite-difference steps must be > 0");
  }
  if (range && !(range->first > 0.0 && range->second > range->first)) {
    throw ConfigError("range: need 0 < lo < hi");
  }
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (!(limits[i] > 0.0) || (i > 0 && !(limits[i] > limits[i - 1]))) {
      throw ConfigError("limits must be positive and increasing");
    }
  }
  if (limits.empty()) throw ConfigError("limits: need at least one upper limit");
}

AxisSpec RunConfig::axis_or(const std::string& name, const AxisSpec& fallback) const {
  const auto it = grids.find(name);
  return it == grids.end() ? fallback : it->second;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "m") {
    cfg.params.m = parse_double(value, key);
  } else if (key == "hbar") {
    cfg.params.hbar = parse_double(value, key);
  } else if (key == "dim") {
    cfg.params.dimension = static_cast<int>(parse_integer(trim(value), key));
  } else if (key == "c0") {
    cfg.consts.c0 = parse_double(value, key);
  } else if (key == "c1") {
    cfg.consts.c1 = parse_double(value, key);
  } else if (key == "c2") {
    cfg.consts.c2 = parse_double(value, key);
  } else if (key == "tol") {
    cfg.tol = parse_double(value, key);
  } else if (key == "output") {
    cfg.output_path = trim(value);
  } else if (key == "target_rel_error") {
    cfg.accuracy.target_rel_error = parse_double(value, key);
  } else if (key == "series_switchover") {
    cfg.accuracy.series_switchover = parse_double(value, key);
  } else if (key == "range") {
    const std::vector<std::string> parts = split(trim(value), ':');
    if (parts.size() != 2) throw ConfigError("range: expected lo:hi, got '" + value + "'");
    cfg.range = std::make_pair(parse_double(parts[0], "range lo"), parse_double(parts[1], "range hi"));
  } else if (key == "max_roots") {
    const long n = parse_integer(trim(value), key);
    if (n < 0) throw ConfigError("max_roots must be >= 0");
    cfg.max_roots = static_cast<std::size_t>(n);
  } else if (key == "limits") {
    cfg.limits.clear();
    for (const std::string& part : split(trim(value), ',')) cfg.limits.push_back(parse_double(part, key));
  } else if (key == "fd_step") {
    cfg.fd_step = parse_double(value, key);
  } else if (key == "quantum_step") {
    cfg.quantum_step = parse_double(value, key);
  } else if (key == "q_fd_step") {
    cfg.q_fd_step = parse_double(value, key);
  } else if (key == "max_series_terms") {
    cfg.accuracy.max_series_terms = static_cast<int>(parse_integer(trim(value), key));
  } else {
    cfg.grids[key] = parse_axis(value);
  }
}

void apply_config(RunConfig& cfg, std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config(cfg, in, path);
}

}  // namespace madelung::cli
