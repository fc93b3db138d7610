#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qtraj/bohmian.hpp"
#include "qtraj/field.hpp"
#include "qtraj/grid.hpp"

namespace qtraj {

struct Moments {
  double q_mean = 0.0;
  double p_mean = 0.0;
  double sigma = 0.0;
};

struct ScatteringReport {
  double transmission = 0.0;
  double reflection = 0.0;
  double split_position = 0.0;
  double evaluation_time = 0.0;
  double ehrenfest_q_residual = 0.0;  // max |d<q>/dt - <p>|
  double ehrenfest_p_residual = 0.0;  // max |d<p>/dt - <F_C>|
  std::optional<double> onset_time;
};

/// Probability fractions (T, R) on either side of `split`:
/// T = sum_{q_i > split} |psi_i|^2 dq / norm. Throws if split is outside the
/// grid interior.
std::pair<double, double> transmission_reflection(const ComplexField& field,
                                                  const Grid& grid, double split);

/// <q>, <p> (central-difference momentum functional) and sigma.
Moments expectation_values(const ComplexField& field, const Grid& grid);

/// Probability current Im{psi* dpsi/dq} with a central difference.
std::vector<double> probability_current(const ComplexField& field,
                                        const Grid& grid);

/// <F_C> = sum |psi_i|^2 F_C(q_i) dq.
double mean_classical_force(const ComplexField& field, const Grid& grid,
                            const PotentialSpec& spec);

/// Centered-difference residuals of d<q>/dt = <p> and d<p>/dt = <F_C> over a
/// time series of moments; returns (max_q_residual, max_p_residual).
std::pair<double, double> ehrenfest_residuals(
    const std::vector<double>& times, const std::vector<Moments>& moments,
    const std::vector<double>& mean_force);

/// Earliest recorded time at which the sampled quantum potential along one
/// trajectory of `run` deviates from the matched `baseline` trajectory by more
/// than `threshold` relative. Both series must share trajectory count and
/// recording times. Returns nullopt when no deviation is found.
std::optional<double> onset_detector(const TrajectoryEnsemble& run,
                                     const TrajectoryEnsemble& baseline,
                                     std::size_t traj_index,
                                     double threshold = 0.05);

}  // namespace qtraj
