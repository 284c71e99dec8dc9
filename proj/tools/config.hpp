#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "madelung/core.hpp"
#include "madelung/grid.hpp"

namespace madelung::cli {

// Raised for malformed flags, config files and grid strings (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A grid, or a single value along one axis.
struct AxisSpec {
  std::optional<GridSpec> grid;
  double value = 0.0;

  std::vector<double> values() const;
  // The grid itself; throws ConfigError for a single value.
  GridSpec require_grid(const std::string& name) const;
};

struct RunConfig {
  PhysicalParams params;
  SolutionConstants consts;
  EvalAccuracy accuracy;
  std::map<std::string, AxisSpec> grids;
  std::string output_path;
  double tol = 1e-9;
  std::optional<std::pair<double, double>> range;
  std::optional<std::size_t> max_roots;
  std::vector<double> limits{10.0, 100.0, 1000.0, 10000.0};
  double fd_step = 1e-4;
  double quantum_step = 8e-4;
  double q_fd_step = 1e-3;

  void validate() const;
  // Named grid, or the fallback when the config does not set it.
  AxisSpec axis_or(const std::string& name, const AxisSpec& fallback) const;
};

// "start:stop:count[:log]" or a single value (a one-point grid).
AxisSpec parse_axis(const std::string& text);

// Keys: m, hbar, dim, c0, c1, c2, tol, output, target_rel_error,
// series_switchover, max_series_terms, range (lo:hi), max_roots, limits
// (comma list), fd_step, quantum_step, q_fd_step; any other key is a grid or
// single value (eta, xi, t, x, y, q_eta, ...) stored under grids[key].
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// One "key = value" per line; '#' starts a comment.
void apply_config(RunConfig& cfg, std::istream& in, const std::string& source);
void apply_config_file(RunConfig& cfg, const std::string& path);

double parse_double(const std::string& text, const std::string& what);

}  // namespace madelung::cli
