#include "qtraj/field.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "qtraj/kernels.hpp"

namespace qtraj {

ComplexField gaussian_packet(const Grid& grid, const GaussianParams& params) {
  if (!(params.gamma > 0.0)) {
    throw std::invalid_argument("gaussian_packet: gamma must be positive");
  }
  const std::size_t n = grid.n_points;
  ComplexField f = ComplexField::zeros(n, 0.0);
  const double amp = std::pow(2.0 * params.gamma / std::numbers::pi, 0.25);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = grid.node(i) - params.q0;
    const double r = amp * std::exp(-params.gamma * s * s);
    const double phi = params.p0 * s;
    f.re[i] = r * std::cos(phi);
    f.im[i] = r * std::sin(phi);
  }
  const double peak = amp;
  const double edge = std::max(std::hypot(f.re[0], f.im[0]),
                               std::hypot(f.re[n - 1], f.im[n - 1]));
  if (edge > 1e-12 * peak) {
    std::cerr << "warning: gaussian_packet not contained in the box "
              << "(boundary amplitude " << edge / peak << " of peak)\n";
  }
  f.re[0] = f.im[0] = 0.0;
  f.re[n - 1] = f.im[n - 1] = 0.0;
  return f;
}

PolarField polar_decompose(const ComplexField& field, double floor_rel) {
  const std::size_t n = field.size();
  PolarField p;
  p.time = field.time;
  p.amplitude.resize(n);
  p.phase.assign(n, 0.0);

  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p.amplitude[i] = std::hypot(field.re[i], field.im[i]);
    if (p.amplitude[i] > peak) peak = p.amplitude[i];
  }
  p.floor = floor_rel * peak;
  if (peak == 0.0) {
    return p;  // all-zero field: zero amplitude, zero phase
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  // Unwrap across reliable nodes; each reliable node is placed within pi of
  // the previous reliable one.
  std::ptrdiff_t last = -1;
  double last_phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.amplitude[i] < p.floor) continue;
    const double raw = std::atan2(field.im[i], field.re[i]);
    double ph = raw;
    if (last >= 0) {
      const double d = raw - std::fmod(last_phase, two_pi);
      ph = last_phase + (d - two_pi * std::round(d / two_pi));
    }
    // Bridge the starved gap (or leading run) up to this node.
    if (static_cast<std::size_t>(last + 1) < i) {
      const double start = (last >= 0) ? last_phase : ph;
      const double span = static_cast<double>(i - last);
      for (std::size_t j = last + 1; j < i; ++j) {
        const double w = static_cast<double>(j - last) / span;
        p.phase[j] = (last >= 0) ? start + w * (ph - start) : ph;
      }
    }
    p.phase[i] = ph;
    last = static_cast<std::ptrdiff_t>(i);
    last_phase = ph;
  }
  // Trailing starved run: constant extension.
  if (last >= 0) {
    for (std::size_t j = static_cast<std::size_t>(last) + 1; j < n; ++j) {
      p.phase[j] = last_phase;
    }
  }
  return p;
}

double discrete_norm(const ComplexField& field, const Grid& grid) {
  return kernels::sum_sq(field.size(), field.re.data(), field.im.data()) *
         grid.dq;
}

}  // namespace qtraj
