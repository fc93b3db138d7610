#pragma once

#include <vector>

#include "qtraj/grid.hpp"

namespace qtraj {

/// External classical potential: free space or a smooth symmetric barrier
///   V(q) = V0 exp[beta (q - qv)] / (1 + exp[beta (q - qv)])^2
/// with peak height V0/4 at q = qv.
struct PotentialSpec {
  enum class Kind { Free, Eckart };
  Kind kind = Kind::Free;
  double v0 = 0.0;    // amplitude (hartree)
  double beta = 0.0;  // inverse width (1/bohr)
  double qv = 0.0;    // barrier center (bohr)

  static PotentialSpec free_space() { return {}; }
  static PotentialSpec eckart(double v0, double beta, double qv);
};

/// V(q); the barrier is evaluated as V0/4 * sech^2(beta (q-qv) / 2) so large
/// |q| cannot overflow.
double eval_potential(const PotentialSpec& spec, double q);

/// Analytic -dV/dq.
double classical_force(const PotentialSpec& spec, double q);

/// V at every grid node.
std::vector<double> potential_table(const PotentialSpec& spec, const Grid& grid);

}  // namespace qtraj
