#include <arm_neon.h>

#include "qtraj/kernels.hpp"

// NEON variants (aarch64, 2 doubles per vector). Same expression trees as the
// scalar reference, no FMA.

namespace qtraj::kernels::neon {

namespace {

inline float64x2_t stencil_lap(const double* f, std::size_t i) {
  const float64x2_t fm = vld1q_f64(f + i - 1);
  const float64x2_t f0 = vld1q_f64(f + i);
  const float64x2_t fp = vld1q_f64(f + i + 1);
  const float64x2_t two = vdupq_n_f64(2.0);
  return vaddq_f64(vsubq_f64(fp, vmulq_f64(two, f0)), fm);
}

}  // namespace

void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out) {
  const double c = 0.5 * inv_dq2;
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vdt = vdupq_n_f64(dt);
  std::size_t i = 1;
  if (n >= 2) {
    for (; i + 2 < n; i += 2) {
      const float64x2_t re = vld1q_f64(re_in + i);
      const float64x2_t im = vld1q_f64(im_in + i);
      const float64x2_t vp = vld1q_f64(pot + i);
      const float64x2_t lap_re = stencil_lap(re_in, i);
      const float64x2_t lap_im = stencil_lap(im_in, i);
      const float64x2_t dre = vsubq_f64(vmulq_f64(vp, im), vmulq_f64(vc, lap_im));
      const float64x2_t dim = vsubq_f64(vmulq_f64(vc, lap_re), vmulq_f64(vp, re));
      vst1q_f64(re_out + i, vaddq_f64(re, vmulq_f64(vdt, dre)));
      vst1q_f64(im_out + i, vaddq_f64(im, vmulq_f64(vdt, dim)));
    }
  }
  for (; i + 1 < n; ++i) {
    const double lap_re = (re_in[i + 1] - 2.0 * re_in[i]) + re_in[i - 1];
    const double lap_im = (im_in[i + 1] - 2.0 * im_in[i]) + im_in[i - 1];
    re_out[i] = re_in[i] + dt * (pot[i] * im_in[i] - c * lap_im);
    im_out[i] = im_in[i] + dt * (c * lap_re - pot[i] * re_in[i]);
  }
}

double sum_sq(std::size_t n, const double* re, const double* im) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t r = vld1q_f64(re + i);
    const float64x2_t m = vld1q_f64(im + i);
    acc = vaddq_f64(acc, vaddq_f64(vmulq_f64(r, r), vmulq_f64(m, m)));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    s += re[i] * re[i] + im[i] * im[i];
  }
  return s;
}

double max_sq_mag(std::size_t n, const double* re, const double* im) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t r = vld1q_f64(re + i);
    const float64x2_t m = vld1q_f64(im + i);
    acc = vmaxq_f64(acc, vaddq_f64(vmulq_f64(r, r), vmulq_f64(m, m)));
  }
  double best = vgetq_lane_f64(acc, 0);
  if (vgetq_lane_f64(acc, 1) > best) best = vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double s = re[i] * re[i] + im[i] * im[i];
    if (s > best) best = s;
  }
  return best;
}

void laplacian(std::size_t n, double inv_dq2, const double* f, double* out) {
  const float64x2_t vs = vdupq_n_f64(inv_dq2);
  std::size_t i = 1;
  if (n >= 2) {
    for (; i + 2 < n; i += 2) {
      vst1q_f64(out + i, vmulq_f64(stencil_lap(f, i), vs));
    }
  }
  for (; i + 1 < n; ++i) {
    out[i] = ((f[i + 1] - 2.0 * f[i]) + f[i - 1]) * inv_dq2;
  }
}

void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out) {
  const float64x2_t vs = vdupq_n_f64(inv_2dq);
  std::size_t i = 1;
  if (n >= 2) {
    for (; i + 2 < n; i += 2) {
      const float64x2_t fm = vld1q_f64(f + i - 1);
      const float64x2_t fp = vld1q_f64(f + i + 1);
      vst1q_f64(out + i, vmulq_f64(vsubq_f64(fp, fm), vs));
    }
  }
  for (; i + 1 < n; ++i) {
    out[i] = (f[i + 1] - f[i - 1]) * inv_2dq;
  }
}

}  // namespace qtraj::kernels::neon
