#include "qtraj/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace qtraj {

PotentialSpec PotentialSpec::eckart(double v0, double beta, double qv) {
  if (!(v0 > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("PotentialSpec::eckart: requires V0 > 0 and beta > 0");
  }
  PotentialSpec s;
  s.kind = Kind::Eckart;
  s.v0 = v0;
  s.beta = beta;
  s.qv = qv;
  return s;
}

double eval_potential(const PotentialSpec& spec, double q) {
  if (spec.kind == PotentialSpec::Kind::Free) return 0.0;
  const double u = 0.5 * spec.beta * (q - spec.qv);
  const double sech = 1.0 / std::cosh(u);
  return 0.25 * spec.v0 * sech * sech;
}

double classical_force(const PotentialSpec& spec, double q) {
  if (spec.kind == PotentialSpec::Kind::Free) return 0.0;
  const double u = 0.5 * spec.beta * (q - spec.qv);
  const double sech = 1.0 / std::cosh(u);
  return 0.25 * spec.v0 * spec.beta * sech * sech * std::tanh(u);
}

std::vector<double> potential_table(const PotentialSpec& spec, const Grid& grid) {
  std::vector<double> v(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    v[i] = eval_potential(spec, grid.node(i));
  }
  return v;
}

}  // namespace qtraj
