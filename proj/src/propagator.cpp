#include "qtraj/propagator.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "qtraj/kernels.hpp"

namespace qtraj {

DivergenceError::DivergenceError(std::size_t step_, double ratio_)
    : std::runtime_error("propagation diverged at step " + std::to_string(step_) +
                         " (max|psi| grew " + std::to_string(ratio_) +
                         "x past the initial max)"),
      step(step_),
      ratio(ratio_) {}

FtcsStepper::FtcsStepper(const Grid& grid, const PotentialSpec& spec)
    : grid_(grid),
      pot_(potential_table(spec, grid)),
      scratch_(ComplexField::zeros(grid.n_points)) {}

void FtcsStepper::step(ComplexField& f) const {
  const std::size_t n = grid_.n_points;
  kernels::ftcs_step(n, grid_.dt, 1.0 / (grid_.dq * grid_.dq), f.re.data(),
                     f.im.data(), pot_.data(), scratch_.re.data(),
                     scratch_.im.data());
  scratch_.re[0] = scratch_.im[0] = 0.0;
  scratch_.re[n - 1] = scratch_.im[n - 1] = 0.0;
  scratch_.time = f.time + grid_.dt;
  std::swap(f.re, scratch_.re);
  std::swap(f.im, scratch_.im);
  f.time = scratch_.time;
}

CrankNicolsonStepper::CrankNicolsonStepper(const Grid& grid,
                                           const PotentialSpec& spec)
    : grid_(grid) {
  const std::size_t m = grid.n_points - 2;  // interior unknowns
  const double inv_dq2 = 1.0 / (grid.dq * grid.dq);
  const std::complex<double> ihalf_dt(0.0, 0.5 * grid.dt);
  offdiag_ = std::complex<double>(0.0, -0.25 * grid.dt * inv_dq2);

  const std::vector<double> pot = potential_table(spec, grid);
  rhs_diag_.resize(m);
  thomas_c_.resize(m);
  pivot_inv_.resize(m);
  work_.resize(m);

  std::complex<double> prev_c(0.0, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double h_diag = inv_dq2 + pot[j + 1];
    const std::complex<double> b = 1.0 + ihalf_dt * h_diag;
    rhs_diag_[j] = 1.0 - ihalf_dt * h_diag;
    const std::complex<double> pivot = b - offdiag_ * prev_c;
    pivot_inv_[j] = 1.0 / pivot;
    thomas_c_[j] = offdiag_ * pivot_inv_[j];
    prev_c = thomas_c_[j];
  }
}

void CrankNicolsonStepper::step(ComplexField& f) const {
  const std::size_t n = grid_.n_points;
  const std::size_t m = n - 2;
  const std::complex<double> roff = -offdiag_;  // B off-diagonal

  // Forward sweep, building the RHS on the fly. Boundary values are zero, so
  // the neighbour reads at nodes 0 and n-1 contribute nothing.
  std::complex<double> prev(0.0, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = j + 1;
    const std::complex<double> psi(f.re[i], f.im[i]);
    const std::complex<double> left(f.re[i - 1], f.im[i - 1]);
    const std::complex<double> right(f.re[i + 1], f.im[i + 1]);
    const std::complex<double> rhs = rhs_diag_[j] * psi + roff * (left + right);
    prev = (rhs - offdiag_ * prev) * pivot_inv_[j];
    work_[j] = prev;
  }
  // Back substitution.
  std::complex<double> next(0.0, 0.0);
  for (std::size_t j = m; j-- > 0;) {
    next = work_[j] - thomas_c_[j] * next;
    f.re[j + 1] = next.real();
    f.im[j + 1] = next.imag();
  }
  f.re[0] = f.im[0] = 0.0;
  f.re[n - 1] = f.im[n - 1] = 0.0;
  f.time += grid_.dt;
}

namespace {

double max_mag_sq(const ComplexField& f) {
  return kernels::max_sq_mag(f.size(), f.re.data(), f.im.data());
}

}  // namespace

ComplexField step_ftcs(const ComplexField& field, const PotentialSpec& spec,
                       const Grid& grid) {
  const double m0 = max_mag_sq(field);
  ComplexField f = field;
  FtcsStepper(grid, spec).step(f);
  if (m0 > 0.0) {
    const double m1 = max_mag_sq(f);
    if (m1 > 1e6 * m0) {
      throw DivergenceError(1, std::sqrt(m1 / m0));
    }
  }
  return f;
}

ComplexField step_implicit(const ComplexField& field, const PotentialSpec& spec,
                           const Grid& grid) {
  ComplexField f = field;
  CrankNicolsonStepper(grid, spec).step(f);
  return f;
}

SnapshotSet propagate(const ComplexField& initial, const PotentialSpec& spec,
                      const Grid& grid, const PropagationSchedule& schedule,
                      const StepObserver& observer) {
  if (schedule.snapshot_stride < 1 || schedule.norm_check_stride < 1) {
    throw std::invalid_argument("propagate: strides must be >= 1");
  }
  const double norm0 = discrete_norm(initial, grid);
  if (std::abs(norm0 - 1.0) > 1e-4) {
    throw std::invalid_argument("propagate: initial state not normalized (norm " +
                                std::to_string(norm0) + ")");
  }

  SnapshotSet out;
  const bool explicit_scheme = schedule.scheme == Scheme::ExplicitFTCS;
  const double mag0 = max_mag_sq(initial);

  ComplexField f = initial;
  auto record_snapshot = [&](const ComplexField& cur) {
    out.snapshots.push_back({cur.time, cur, polar_decompose(cur)});
  };
  auto record_norm = [&](const ComplexField& cur) {
    const double norm = discrete_norm(cur, grid);
    out.norm_history.emplace_back(cur.time, norm);
    if (explicit_scheme && std::abs(norm - 1.0) > 1e-3) {
      out.norm_drift_exceeded = true;
    }
  };

  record_snapshot(f);
  record_norm(f);
  if (observer) observer(0, f);

  std::optional<FtcsStepper> ftcs;
  std::optional<CrankNicolsonStepper> cn;
  if (explicit_scheme) {
    ftcs.emplace(grid, spec);
  } else {
    cn.emplace(grid, spec);
  }

  for (std::size_t step = 1; step <= grid.n_steps; ++step) {
    if (explicit_scheme) {
      ftcs->step(f);
    } else {
      cn->step(f);
    }
    const bool last = step == grid.n_steps;
    if (step % schedule.norm_check_stride == 0 || last) {
      if (explicit_scheme && mag0 > 0.0 && max_mag_sq(f) > 1e6 * mag0) {
        throw DivergenceError(step, std::sqrt(max_mag_sq(f) / mag0));
      }
      record_norm(f);
    }
    if (step % schedule.snapshot_stride == 0 || last) {
      record_snapshot(f);
    }
    if (observer) observer(step, f);
  }
  return out;
}

}  // namespace qtraj
