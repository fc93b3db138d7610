#include "qtraj/bohmian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qtraj/kernels.hpp"

namespace qtraj {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

bool TrajectoryEnsemble::ordered() const {
  for (std::size_t j = 0; j + 1 < positions.size(); ++j) {
    if (!(positions[j] < positions[j + 1])) return false;
  }
  return true;
}

TrajectoryEscape::TrajectoryEscape(std::size_t index_, double time_)
    : std::runtime_error("trajectory " + std::to_string(index_) +
                         " left the grid at t = " + std::to_string(time_)),
      index(index_),
      time(time_) {}

std::vector<double> quantum_potential(const PolarField& polar, const Grid& grid,
                                      double floor_rel) {
  const std::size_t n = polar.size();
  const double peak = *std::max_element(polar.amplitude.begin(),
                                        polar.amplitude.end());
  const double floor = floor_rel * peak;

  std::vector<double> lap(n, 0.0);
  kernels::laplacian(n, 1.0 / (grid.dq * grid.dq), polar.amplitude.data(),
                     lap.data());
  std::vector<double> q(n, kNaN);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (polar.amplitude[i] >= floor && floor > 0.0) {
      q[i] = -0.5 * lap[i] / polar.amplitude[i];
    }
  }
  return q;
}

std::vector<double> quantum_force(const std::vector<double>& Q, const Grid& grid) {
  const std::size_t n = Q.size();
  std::vector<double> fq(n, kNaN);
  // NaN markers propagate through the stencil arithmetic on their own.
  kernels::central_gradient(n, -0.5 / grid.dq, Q.data(), fq.data());
  fq[0] = fq[n - 1] = kNaN;
  return fq;
}

std::vector<double> velocity_field(const PolarField& polar, const Grid& grid) {
  const std::size_t n = polar.size();
  std::vector<double> v(n, 0.0);
  kernels::central_gradient(n, 0.5 / grid.dq, polar.phase.data(), v.data());
  v[0] = v[1];
  v[n - 1] = v[n - 2];
  return v;
}

double effective_force(double FQ, double FC) { return FC + FQ; }

FieldDerived compute_field_derived(const PolarField& polar, const Grid& grid,
                                   double floor_rel) {
  FieldDerived d;
  d.time = polar.time;
  d.Q = quantum_potential(polar, grid, floor_rel);
  d.FQ = quantum_force(d.Q, grid);
  d.v = velocity_field(polar, grid);
  d.valid.resize(polar.size());
  for (std::size_t i = 0; i < polar.size(); ++i) {
    d.valid[i] = std::isfinite(d.Q[i]) && std::isfinite(d.FQ[i]) ? 1 : 0;
  }
  return d;
}

TrajectoryEnsemble make_ensemble(const GaussianParams& params, std::size_t n_traj,
                                 double half_span) {
  if (n_traj == 0 || n_traj % 2 == 0) {
    throw std::invalid_argument("make_ensemble: n_traj must be odd");
  }
  if (!(half_span > 0.0)) {
    throw std::invalid_argument("make_ensemble: half_span must be positive");
  }
  TrajectoryEnsemble e;
  e.positions.resize(n_traj);
  e.series.resize(n_traj);
  if (n_traj == 1) {
    e.positions[0] = params.q0;
    return e;
  }
  for (std::size_t j = 0; j < n_traj; ++j) {
    const double frac =
        2.0 * static_cast<double>(j) / static_cast<double>(n_traj - 1) - 1.0;
    e.positions[j] = params.q0 + half_span * frac;
  }
  e.positions[(n_traj - 1) / 2] = params.q0;
  return e;
}

namespace {

double lerp_at(const std::vector<double>& f, const Grid& grid, double q) {
  const double x = (q - grid.q_min) / grid.dq;
  std::size_t i = static_cast<std::size_t>(x);
  if (i + 1 >= grid.n_points) i = grid.n_points - 2;
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * f[i] + w * f[i + 1];
}

}  // namespace

void record_and_advance(TrajectoryEnsemble& ensemble, const FieldDerived& derived,
                        const PotentialSpec& spec, const Grid& grid, double dt) {
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    const double q = ensemble.positions[j];
    if (!grid.contains(q)) {
      throw TrajectoryEscape(j, derived.time);
    }
    const double x = (q - grid.q_min) / grid.dq;
    const std::size_t i = std::min(static_cast<std::size_t>(x), grid.n_points - 2);
    if (!derived.valid[i] || !derived.valid[i + 1]) {
      throw std::runtime_error("trajectory " + std::to_string(j) +
                               " entered a starved region at t = " +
                               std::to_string(derived.time));
    }
    TrajectoryPoint p;
    p.t = derived.time;
    p.q = q;
    p.v = lerp_at(derived.v, grid, q);
    p.Q = lerp_at(derived.Q, grid, q);
    p.FQ = lerp_at(derived.FQ, grid, q);
    p.FC = classical_force(spec, q);
    p.Feff = effective_force(p.FQ, p.FC);
    ensemble.series[j].push_back(p);
    if (dt != 0.0) {
      ensemble.positions[j] = q + p.v * dt;
    }
  }
}

}  // namespace qtraj
