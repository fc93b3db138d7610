#include <immintrin.h>

#include "qtraj/kernels.hpp"

// AVX2 variants. Expression trees mirror the scalar reference (no FMA) so the
// pointwise stencils are bit-identical; reductions use lane accumulators and
// differ from the scalar sum only by summation order.

namespace qtraj::kernels::avx2 {

namespace {

inline __m256d stencil_lap(const double* f, std::size_t i) {
  const __m256d fm = _mm256_loadu_pd(f + i - 1);
  const __m256d f0 = _mm256_loadu_pd(f + i);
  const __m256d fp = _mm256_loadu_pd(f + i + 1);
  const __m256d two = _mm256_set1_pd(2.0);
  return _mm256_add_pd(_mm256_sub_pd(fp, _mm256_mul_pd(two, f0)), fm);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
  return _mm_cvtsd_f64(s1);
}

}  // namespace

void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out) {
  const double c = 0.5 * inv_dq2;
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vdt = _mm256_set1_pd(dt);
  std::size_t i = 1;
  if (n >= 2) {
    for (; i + 4 < n; i += 4) {
      const __m256d re = _mm256_loadu_pd(re_in + i);
      const __m256d im = _mm256_loadu_pd(im_in + i);
      const __m256d vp = _mm256_loadu_pd(pot + i);
      const __m256d lap_re = stencil_lap(re_in, i);
      const __m256d lap_im = stencil_lap(im_in, i);
      const __m256d dre =
          _mm256_sub_pd(_mm256_mul_pd(vp, im), _mm256_mul_pd(vc, lap_im));
      const __m256d dim =
          _mm256_sub_pd(_mm256_mul_pd(vc, lap_re), _mm256_mul_pd(vp, re));
      _mm256_storeu_pd(re_out + i, _mm256_add_pd(re, _mm256_mul_pd(vdt, dre)));
      _mm256_storeu_pd(im_out + i, _mm256_add_pd(im, _mm256_mul_pd(vdt, dim)));
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
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    acc = _mm256_add_pd(acc,
                        _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    s += re[i] * re[i] + im[i] * im[i];
  }
  return s;
}

double max_sq_mag(std::size_t n, const double* re, const double* im) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    acc = _mm256_max_pd(
        acc, _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double best = lanes[0];
  for (int k = 1; k < 4; ++k) {
    if (lanes[k] > best) best = lanes[k];
  }
  for (; i < n; ++i) {
    const double s = re[i] * re[i] + im[i] * im[i];
    if (s > best) best = s;
  }
  return best;
}

void laplacian(std::size_t n, double inv_dq2, const double* f, double* out) {
  const __m256d vs = _mm256_set1_pd(inv_dq2);
  std::size_t i = 1;
  if (n >= 2) {
    for (; i + 4 < n; i += 4) {
      _mm256_storeu_pd(out + i, _mm256_mul_pd(stencil_lap(f, i), vs));
    }
  }
  for (; i + 1 < n; ++i) {
    out[i] = ((f[i + 1] - 2.0 * f[i]) + f[i - 1]) * inv_dq2;
  }
}

void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out) {
  const __m256d vs = _mm256_set1_pd(inv_2dq);
  std::size_t i = 1;
  if (n >= 2) {
    for (; i + 4 < n; i += 4) {
      const __m256d fm = _mm256_loadu_pd(f + i - 1);
      const __m256d fp = _mm256_loadu_pd(f + i + 1);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(fp, fm), vs));
    }
  }
  for (; i + 1 < n; ++i) {
    out[i] = (f[i + 1] - f[i - 1]) * inv_2dq;
  }
}

}  // namespace qtraj::kernels::avx2
