#include "qtraj/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qtraj {

std::pair<double, double> transmission_reflection(const ComplexField& field,
                                                  const Grid& grid, double split) {
  if (!grid.contains(split)) {
    throw std::invalid_argument("transmission_reflection: split outside grid");
  }
  double total = 0.0;
  double right = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double w = field.re[i] * field.re[i] + field.im[i] * field.im[i];
    total += w;
    if (grid.node(i) > split) right += w;
  }
  if (total == 0.0) return {0.0, 1.0};
  const double t = right / total;
  return {t, 1.0 - t};
}

Moments expectation_values(const ComplexField& field, const Grid& grid) {
  const std::size_t n = grid.n_points;
  double norm = 0.0, q1 = 0.0, q2 = 0.0, p = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = field.re[i] * field.re[i] + field.im[i] * field.im[i];
    const double q = grid.node(i);
    norm += w;
    q1 += w * q;
    q2 += w * q * q;
    if (i > 0 && i + 1 < n) {
      // Im{psi_i^* (psi_{i+1} - psi_{i-1})} / (2 dq)
      const double dre = field.re[i + 1] - field.re[i - 1];
      const double dim = field.im[i + 1] - field.im[i - 1];
      p += (field.re[i] * dim - field.im[i] * dre) / (2.0 * grid.dq);
    }
  }
  Moments m;
  if (norm == 0.0) return m;
  m.q_mean = q1 / norm;
  m.p_mean = p / norm;
  const double var = q2 / norm - m.q_mean * m.q_mean;
  m.sigma = var > 0.0 ? std::sqrt(var) : 0.0;
  return m;
}

std::vector<double> probability_current(const ComplexField& field,
                                        const Grid& grid) {
  const std::size_t n = grid.n_points;
  std::vector<double> j(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dre = field.re[i + 1] - field.re[i - 1];
    const double dim = field.im[i + 1] - field.im[i - 1];
    j[i] = (field.re[i] * dim - field.im[i] * dre) / (2.0 * grid.dq);
  }
  return j;
}

double mean_classical_force(const ComplexField& field, const Grid& grid,
                            const PotentialSpec& spec) {
  double norm = 0.0, f = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double w = field.re[i] * field.re[i] + field.im[i] * field.im[i];
    norm += w;
    f += w * classical_force(spec, grid.node(i));
  }
  return norm > 0.0 ? f / norm : 0.0;
}

std::pair<double, double> ehrenfest_residuals(
    const std::vector<double>& times, const std::vector<Moments>& moments,
    const std::vector<double>& mean_force) {
  if (times.size() != moments.size() || times.size() != mean_force.size()) {
    throw std::invalid_argument("ehrenfest_residuals: series length mismatch");
  }
  double rq = 0.0, rp = 0.0;
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    const double dt2 = times[k + 1] - times[k - 1];
    if (!(dt2 > 0.0)) continue;
    const double dq_dt = (moments[k + 1].q_mean - moments[k - 1].q_mean) / dt2;
    const double dp_dt = (moments[k + 1].p_mean - moments[k - 1].p_mean) / dt2;
    rq = std::max(rq, std::abs(dq_dt - moments[k].p_mean));
    rp = std::max(rp, std::abs(dp_dt - mean_force[k]));
  }
  return {rq, rp};
}

std::optional<double> onset_detector(const TrajectoryEnsemble& run,
                                     const TrajectoryEnsemble& baseline,
                                     std::size_t traj_index, double threshold) {
  if (run.size() != baseline.size() || traj_index >= run.size()) {
    throw std::invalid_argument("onset_detector: ensemble shape mismatch");
  }
  const auto& a = run.series[traj_index];
  const auto& b = baseline.series[traj_index];
  if (a.size() != b.size()) {
    throw std::invalid_argument("onset_detector: recording cadence mismatch");
  }
  double q_scale = 0.0;
  for (const auto& p : b) q_scale = std::max(q_scale, std::abs(p.Q));
  const double denom_floor = 1e-3 * q_scale;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k].t - b[k].t) > 1e-12) {
      throw std::invalid_argument("onset_detector: recording times mismatch");
    }
    const double denom = std::max(std::abs(b[k].Q), denom_floor);
    if (std::abs(a[k].Q - b[k].Q) > threshold * denom) {
      return a[k].t;
    }
  }
  return std::nullopt;
}

}  // namespace qtraj
