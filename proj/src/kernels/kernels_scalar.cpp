#include "qtraj/kernels.hpp"

// Reference kernels. The SIMD variants mirror these expression trees exactly
// (same association, no FMA) so the pointwise stencils stay bit-identical.

namespace qtraj::kernels::scalar {

void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out) {
  const double c = 0.5 * inv_dq2;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lap_re = (re_in[i + 1] - 2.0 * re_in[i]) + re_in[i - 1];
    const double lap_im = (im_in[i + 1] - 2.0 * im_in[i]) + im_in[i - 1];
    re_out[i] = re_in[i] + dt * (pot[i] * im_in[i] - c * lap_im);
    im_out[i] = im_in[i] + dt * (c * lap_re - pot[i] * re_in[i]);
  }
}

double sum_sq(std::size_t n, const double* re, const double* im) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += re[i] * re[i] + im[i] * im[i];
  }
  return acc;
}

double max_sq_mag(std::size_t n, const double* re, const double* im) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = re[i] * re[i] + im[i] * im[i];
    if (s > m) m = s;
  }
  return m;
}

void laplacian(std::size_t n, double inv_dq2, const double* f, double* out) {
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = ((f[i + 1] - 2.0 * f[i]) + f[i - 1]) * inv_dq2;
  }
}

void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out) {
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (f[i + 1] - f[i - 1]) * inv_2dq;
  }
}

}  // namespace qtraj::kernels::scalar
