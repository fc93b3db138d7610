#pragma once

#include <complex>
#include <vector>

#include "qtraj/grid.hpp"

namespace qtraj {

/// Complex wavefunction values on the grid at one time, stored planar
/// (separate real/imaginary arrays) for the stencil kernels.
/// Boundary values are held at exactly zero (Dirichlet box).
struct ComplexField {
  std::vector<double> re;
  std::vector<double> im;
  double time = 0.0;

  std::size_t size() const { return re.size(); }
  std::complex<double> at(std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, std::complex<double> z) {
    re[i] = z.real();
    im[i] = z.imag();
  }

  static ComplexField zeros(std::size_t n, double time = 0.0) {
    ComplexField f;
    f.re.assign(n, 0.0);
    f.im.assign(n, 0.0);
    f.time = time;
    return f;
  }
};

/// Amplitude R >= 0 and spatially unwrapped phase S (hbar = 1).
/// Below `floor` the phase of the source field is numerically meaningless;
/// there the phase is bridged linearly between reliable neighbours.
struct PolarField {
  std::vector<double> amplitude;
  std::vector<double> phase;
  double time = 0.0;
  double floor = 0.0;  ///< absolute amplitude floor used during unwrapping

  std::size_t size() const { return amplitude.size(); }
  bool reliable(std::size_t i) const { return amplitude[i] >= floor; }
};

/// Gaussian packet A exp[-gamma (q-q0)^2 + i p0 (q-q0)], gamma = 1/(2 delta^2).
struct GaussianParams {
  double gamma = 2.0;
  double q0 = -2.0;
  double p0 = 10.0;
};

/// Samples the Gaussian packet on the grid and clamps the boundary nodes to
/// zero. Throws std::invalid_argument for gamma <= 0; warns on stderr if the
/// packet is not contained (boundary amplitude above 1e-12 of peak).
ComplexField gaussian_packet(const Grid& grid, const GaussianParams& params);

/// Amplitude/phase split with left-to-right 2*pi unwrapping. The floor is
/// given as a fraction of the peak amplitude; nodes below it get a linearly
/// bridged phase (constant extension at the ends).
PolarField polar_decompose(const ComplexField& field,
                           double floor_rel = 1e-10);

/// Discrete norm sum |psi_i|^2 dq.
double discrete_norm(const ComplexField& field, const Grid& grid);

}  // namespace qtraj
