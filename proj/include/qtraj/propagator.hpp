#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qtraj/field.hpp"
#include "qtraj/grid.hpp"
#include "qtraj/potential.hpp"

namespace qtraj {

enum class Scheme { ExplicitFTCS, ImplicitCN };

struct PropagationSchedule {
  Scheme scheme = Scheme::ImplicitCN;
  std::size_t snapshot_stride = 1;
  std::size_t norm_check_stride = 1;
};

struct Snapshot {
  double time = 0.0;
  ComplexField field;
  PolarField polar;
};

struct SnapshotSet {
  std::vector<Snapshot> snapshots;
  std::vector<std::pair<double, double>> norm_history;  // (time, norm)
  bool norm_drift_exceeded = false;  // explicit scheme drifted past 1e-3
};

/// Explicit-scheme blow-up detected: max|psi| exceeded 1e3 x the initial max.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, double ratio);
  std::size_t step;
  double ratio;
};

/// Forward-Euler-in-time, centered-in-space update. Conditionally usable
/// only; relies on a very small dt/dq^2.
class FtcsStepper {
 public:
  FtcsStepper(const Grid& grid, const PotentialSpec& spec);
  void step(ComplexField& f) const;

 private:
  Grid grid_;
  std::vector<double> pot_;
  mutable ComplexField scratch_;
};

/// Crank-Nicolson update (I + i dt/2 H) psi' = (I - i dt/2 H) psi with a
/// precomputed tridiagonal factorization; conserves the discrete norm to
/// solver precision.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const Grid& grid, const PotentialSpec& spec);
  void step(ComplexField& f) const;

 private:
  Grid grid_;
  std::vector<std::complex<double>> rhs_diag_;   // B diagonal, interior nodes
  std::vector<std::complex<double>> thomas_c_;   // precomputed c'_j
  std::vector<std::complex<double>> pivot_inv_;  // 1 / (b_j - a c'_{j-1})
  std::complex<double> offdiag_;                 // A off-diagonal
  mutable std::vector<std::complex<double>> work_;
};

/// Single steps matching the schedule-free contracts above.
ComplexField step_ftcs(const ComplexField& field, const PotentialSpec& spec,
                       const Grid& grid);
ComplexField step_implicit(const ComplexField& field, const PotentialSpec& spec,
                           const Grid& grid);

/// Called after selected steps during propagation; `step` counts from 0
/// (initial state) to grid.n_steps.
using StepObserver = std::function<void(std::size_t step, const ComplexField&)>;

/// Runs grid.n_steps steps of the selected scheme. The observer, when given,
/// is invoked on the initial state and after every step (observers subsample
/// as they see fit). Norm is recorded every norm_check_stride steps; explicit
/// blow-up raises DivergenceError with the failing step index.
SnapshotSet propagate(const ComplexField& initial, const PotentialSpec& spec,
                      const Grid& grid, const PropagationSchedule& schedule,
                      const StepObserver& observer = {});

}  // namespace qtraj
