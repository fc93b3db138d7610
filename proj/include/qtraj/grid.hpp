#pragma once

#include <cstddef>
#include <stdexcept>

namespace qtraj {

/// Uniform 1D spatial lattice plus the time-step schedule, in atomic units.
/// Both endpoints are grid nodes: dq = (q_max - q_min) / (n_points - 1).
struct Grid {
  double q_min = 0.0;
  double q_max = 0.0;
  std::size_t n_points = 0;
  double dq = 0.0;
  double dt = 0.0;
  std::size_t n_steps = 0;

  double node(std::size_t i) const { return q_min + static_cast<double>(i) * dq; }
  bool contains(double q) const { return q > q_min && q < q_max; }
};

/// Throws std::invalid_argument on non-finite inputs, n_points < 3 or dt <= 0.
Grid make_grid(double q_min, double q_max, std::size_t n_points, double dt,
               std::size_t n_steps);

}  // namespace qtraj
