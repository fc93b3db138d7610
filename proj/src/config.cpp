#include "qtraj/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace qtraj {

PotentialSpec RunConfig::potential_spec() const {
  if (potential == PotentialSpec::Kind::Free) return PotentialSpec::free_space();
  return PotentialSpec::eckart(v0, beta, qv);
}

PropagationSchedule RunConfig::schedule() const {
  return {scheme, snapshot_stride, norm_check_stride};
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  if (name == "free") {
    c.scenario = "free";
    c.potential = PotentialSpec::Kind::Free;
    c.n_steps = 100000;  // T = 0.4
    c.traj_stride = 100;
  } else if (name == "eckart") {
    c.scenario = "eckart";
    c.potential = PotentialSpec::Kind::Eckart;
    c.n_steps = 87500;  // T = 0.35
    c.traj_stride = 25;
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected free or eckart)");
  }
  return c;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
  }
  if (pos != value.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
  }
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v < 0.0 || v != std::floor(v) || v > 1e15) {
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" +
                      value + "'");
  }
  return static_cast<std::size_t>(v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    if (value == "custom") {
      c.scenario = "custom";
    } else {
      const std::string out_dir = c.out_dir;
      c = preset(value);
      c.out_dir = out_dir;
    }
  } else if (key == "q_min") {
    c.q_min = parse_double(key, value);
  } else if (key == "q_max") {
    c.q_max = parse_double(key, value);
  } else if (key == "n_points") {
    c.n_points = parse_count(key, value);
  } else if (key == "dt") {
    c.dt = parse_double(key, value);
  } else if (key == "n_steps") {
    c.n_steps = parse_count(key, value);
  } else if (key == "gamma") {
    c.gamma = parse_double(key, value);
  } else if (key == "q0") {
    c.q0 = parse_double(key, value);
  } else if (key == "p0") {
    c.p0 = parse_double(key, value);
  } else if (key == "potential") {
    if (value == "free") {
      c.potential = PotentialSpec::Kind::Free;
    } else if (value == "eckart") {
      c.potential = PotentialSpec::Kind::Eckart;
    } else {
      throw ConfigError("key 'potential': expected free or eckart, got '" + value +
                        "'");
    }
  } else if (key == "V0") {
    c.v0 = parse_double(key, value);
  } else if (key == "beta") {
    c.beta = parse_double(key, value);
  } else if (key == "qv") {
    c.qv = parse_double(key, value);
  } else if (key == "scheme") {
    if (value == "ftcs") {
      c.scheme = Scheme::ExplicitFTCS;
    } else if (value == "cn") {
      c.scheme = Scheme::ImplicitCN;
    } else {
      throw ConfigError("key 'scheme': expected ftcs or cn, got '" + value + "'");
    }
  } else if (key == "snapshot_stride") {
    c.snapshot_stride = parse_count(key, value);
  } else if (key == "traj_stride") {
    c.traj_stride = parse_count(key, value);
  } else if (key == "norm_check_stride") {
    c.norm_check_stride = parse_count(key, value);
  } else if (key == "n_traj") {
    c.n_traj = parse_count(key, value);
  } else if (key == "half_span") {
    c.half_span = parse_double(key, value);
  } else if (key == "onset_threshold") {
    c.onset_threshold = parse_double(key, value);
  } else if (key == "split") {
    c.split = parse_double(key, value);
  } else if (key == "out_dir") {
    c.out_dir = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void validate(const RunConfig& c) {
  if (!(c.q_min < c.q_max)) throw ConfigError("key 'q_min': requires q_min < q_max");
  if (c.n_points < 3) {
    throw ConfigError("key 'n_points': must be >= 3, got " +
                      std::to_string(c.n_points));
  }
  if (!(c.dt > 0.0)) throw ConfigError("key 'dt': must be positive");
  if (!(c.gamma > 0.0)) throw ConfigError("key 'gamma': must be positive");
  if (c.potential == PotentialSpec::Kind::Eckart) {
    if (!(c.v0 > 0.0)) throw ConfigError("key 'V0': must be positive");
    if (!(c.beta > 0.0)) throw ConfigError("key 'beta': must be positive");
  }
  if (c.snapshot_stride < 1) throw ConfigError("key 'snapshot_stride': must be >= 1");
  if (c.traj_stride < 1) throw ConfigError("key 'traj_stride': must be >= 1");
  if (c.norm_check_stride < 1) {
    throw ConfigError("key 'norm_check_stride': must be >= 1");
  }
  if (c.n_steps >= 1) {
    if (c.snapshot_stride > c.n_steps) {
      throw ConfigError("key 'snapshot_stride': exceeds n_steps");
    }
    if (c.traj_stride > c.n_steps) {
      throw ConfigError("key 'traj_stride': exceeds n_steps");
    }
    if (c.norm_check_stride > c.n_steps) {
      throw ConfigError("key 'norm_check_stride': exceeds n_steps");
    }
  }
  if (c.n_traj == 0 || c.n_traj % 2 == 0) {
    throw ConfigError("key 'n_traj': must be odd, got " + std::to_string(c.n_traj));
  }
  if (!(c.half_span > 0.0)) throw ConfigError("key 'half_span': must be positive");
  if (!(c.onset_threshold > 0.0)) {
    throw ConfigError("key 'onset_threshold': must be positive");
  }
  if (!(c.split > c.q_min && c.split < c.q_max)) {
    throw ConfigError("key 'split': must lie strictly inside the grid");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("parse error at line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("parse error at line " + std::to_string(lineno) +
                        ": empty key");
    }
    pairs.emplace_back(key, value);
  }

  RunConfig c;
  // Expand the scenario preset first so later keys can override preset values.
  for (const auto& [key, value] : pairs) {
    if (key == "scenario") apply_key(c, key, value);
  }
  for (const auto& [key, value] : pairs) {
    if (key != "scenario") apply_key(c, key, value);
  }
  validate(c);
  return c;
}

}  // namespace qtraj
