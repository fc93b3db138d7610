#include "qtraj/grid.hpp"

#include <cmath>
#include <string>

namespace qtraj {

Grid make_grid(double q_min, double q_max, std::size_t n_points, double dt,
               std::size_t n_steps) {
  if (!std::isfinite(q_min) || !std::isfinite(q_max) || !std::isfinite(dt)) {
    throw std::invalid_argument("make_grid: non-finite input");
  }
  if (!(q_min < q_max)) {
    throw std::invalid_argument("make_grid: requires q_min < q_max");
  }
  if (n_points < 3) {
    throw std::invalid_argument("make_grid: n_points must be >= 3, got " +
                                std::to_string(n_points));
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("make_grid: dt must be positive");
  }
  Grid g;
  g.q_min = q_min;
  g.q_max = q_max;
  g.n_points = n_points;
  g.dq = (q_max - q_min) / static_cast<double>(n_points - 1);
  g.dt = dt;
  g.n_steps = n_steps;
  return g;
}

}  // namespace qtraj
