#pragma once

#include <stdexcept>
#include <vector>

#include "qtraj/field.hpp"
#include "qtraj/grid.hpp"
#include "qtraj/potential.hpp"

namespace qtraj {

/// Per-node quantities derived from one polar snapshot: quantum potential
///   Q = -(1/2) R''/R,
/// quantum force FQ = -dQ/dq and flow velocity v = dS/dq (m = 1).
/// Nodes where the amplitude sits below the floor (and the grid boundaries)
/// carry NaN in Q/FQ and valid[i] == 0; values are never fabricated there.
struct FieldDerived {
  std::vector<double> Q;
  std::vector<double> FQ;
  std::vector<double> v;
  std::vector<unsigned char> valid;
  double time = 0.0;
};

struct TrajectoryPoint {
  double t = 0.0;
  double q = 0.0;
  double v = 0.0;
  double Q = 0.0;
  double FQ = 0.0;
  double FC = 0.0;
  double Feff = 0.0;
};

/// Ensemble of flow trajectories; initial positions strictly increasing and
/// (1D non-crossing) expected to stay so at all times.
struct TrajectoryEnsemble {
  std::vector<double> positions;                    // current positions
  std::vector<std::vector<TrajectoryPoint>> series; // one history per trajectory

  std::size_t size() const { return positions.size(); }
  bool ordered() const;
};

class TrajectoryEscape : public std::runtime_error {
 public:
  TrajectoryEscape(std::size_t index, double time);
  std::size_t index;
  double time;
};

/// Q_i = -(1/2) (R_{i+1} - 2 R_i + R_{i-1}) / (dq^2 R_i) at interior nodes
/// with R_i >= floor_rel * max(R); NaN elsewhere.
std::vector<double> quantum_potential(const PolarField& polar, const Grid& grid,
                                      double floor_rel = 1e-10);

/// FQ_i = -(Q_{i+1} - Q_{i-1}) / (2 dq); NaN markers propagate.
std::vector<double> quantum_force(const std::vector<double>& Q, const Grid& grid);

/// v_i = (S_{i+1} - S_{i-1}) / (2 dq); boundary nodes copy their neighbour.
std::vector<double> velocity_field(const PolarField& polar, const Grid& grid);

double effective_force(double FQ, double FC);

FieldDerived compute_field_derived(const PolarField& polar, const Grid& grid,
                                   double floor_rel = 1e-10);

/// n_traj equispaced starting points covering [q0 - half_span, q0 + half_span];
/// n_traj must be odd so the middle point sits exactly at q0.
TrajectoryEnsemble make_ensemble(const GaussianParams& params, std::size_t n_traj,
                                 double half_span);

/// Samples v, Q, FQ (linear interpolation between the bracketing nodes), FC
/// and Feff = FC + FQ at each current position, appends one TrajectoryPoint
/// per trajectory, then advances q <- q + v * dt (skipped when dt == 0, used
/// for the final sample). Throws TrajectoryEscape if a position leaves the
/// grid and std::runtime_error if a trajectory enters a starved region.
void record_and_advance(TrajectoryEnsemble& ensemble, const FieldDerived& derived,
                        const PotentialSpec& spec, const Grid& grid, double dt);

}  // namespace qtraj
