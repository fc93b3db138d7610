#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "qtraj/field.hpp"
#include "qtraj/grid.hpp"
#include "qtraj/potential.hpp"
#include "qtraj/propagator.hpp"

namespace qtraj {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Fully expanded run description. Presets fill every field with the standard
/// scenario values; a config file or --override pairs may change any of them.
struct RunConfig {
  std::string scenario = "custom";

  double q_min = -10.0;
  double q_max = 10.0;
  std::size_t n_points = 2500;
  double dt = 4e-6;
  std::size_t n_steps = 100000;

  double gamma = 2.0;
  double q0 = -2.0;
  double p0 = 10.0;

  PotentialSpec::Kind potential = PotentialSpec::Kind::Free;
  double v0 = 200.0;
  double beta = 20.0;
  double qv = 0.0;

  Scheme scheme = Scheme::ImplicitCN;
  std::size_t snapshot_stride = 5000;
  std::size_t traj_stride = 100;
  std::size_t norm_check_stride = 1000;

  std::size_t n_traj = 19;
  double half_span = 1.0;
  double onset_threshold = 0.05;
  double split = 0.0;

  std::string out_dir = "out";

  Grid grid() const { return make_grid(q_min, q_max, n_points, dt, n_steps); }
  GaussianParams packet() const { return {gamma, q0, p0}; }
  PotentialSpec potential_spec() const;
  PropagationSchedule schedule() const;
};

/// "free" or "eckart"; throws ConfigError for anything else.
RunConfig preset(const std::string& name);

/// Applies one `key = value` pair. Unknown keys and malformed values raise
/// ConfigError naming the key.
void apply_key(RunConfig& config, const std::string& key, const std::string& value);

/// Cross-field validation; raises ConfigError naming the offending key.
void validate(const RunConfig& config);

/// Flat `key = value` file, UTF-8, '#' comments. The scenario key (when
/// present) expands its preset first; remaining keys are applied in file
/// order. The result is validated. Parse errors carry the line number.
RunConfig load_config(const std::string& path);

}  // namespace qtraj
