#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qtraj/kernels.hpp"

namespace qtraj::kernels {

namespace {

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(QTRAJ_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::Neon:
#if defined(QTRAJ_HAVE_NEON)
      return true;  // NEON is baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

Backend detect_backend() {
  if (const char* env = std::getenv("QTRAJ_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Backend::Scalar;
    if (want == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
    if (want == "neon" && backend_available(Backend::Neon)) return Backend::Neon;
    // Unknown or unavailable request falls through to autodetection.
  }
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend& current() {
  static Backend b = detect_backend();
  return b;
}

}  // namespace

Backend active_backend() { return current(); }

std::string backend_name() {
  switch (current()) {
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
    default:
      return "scalar";
  }
}

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error("kernel backend not available on this machine");
  }
  current() = b;
}

void reset_backend() { current() = detect_backend(); }

void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out) {
  switch (current()) {
#if defined(QTRAJ_HAVE_AVX2)
    case Backend::Avx2:
      avx2::ftcs_step(n, dt, inv_dq2, re_in, im_in, pot, re_out, im_out);
      return;
#endif
#if defined(QTRAJ_HAVE_NEON)
    case Backend::Neon:
      neon::ftcs_step(n, dt, inv_dq2, re_in, im_in, pot, re_out, im_out);
      return;
#endif
    default:
      scalar::ftcs_step(n, dt, inv_dq2, re_in, im_in, pot, re_out, im_out);
      return;
  }
}

double sum_sq(std::size_t n, const double* re, const double* im) {
  switch (current()) {
#if defined(QTRAJ_HAVE_AVX2)
    case Backend::Avx2:
      return avx2::sum_sq(n, re, im);
#endif
#if defined(QTRAJ_HAVE_NEON)
    case Backend::Neon:
      return neon::sum_sq(n, re, im);
#endif
    default:
      return scalar::sum_sq(n, re, im);
  }
}

double max_sq_mag(std::size_t n, const double* re, const double* im) {
  switch (current()) {
#if defined(QTRAJ_HAVE_AVX2)
    case Backend::Avx2:
      return avx2::max_sq_mag(n, re, im);
#endif
#if defined(QTRAJ_HAVE_NEON)
    case Backend::Neon:
      return neon::max_sq_mag(n, re, im);
#endif
    default:
      return scalar::max_sq_mag(n, re, im);
  }
}

void laplacian(std::size_t n, double inv_dq2, const double* f, double* out) {
  switch (current()) {
#if defined(QTRAJ_HAVE_AVX2)
    case Backend::Avx2:
      avx2::laplacian(n, inv_dq2, f, out);
      return;
#endif
#if defined(QTRAJ_HAVE_NEON)
    case Backend::Neon:
      neon::laplacian(n, inv_dq2, f, out);
      return;
#endif
    default:
      scalar::laplacian(n, inv_dq2, f, out);
      return;
  }
}

void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out) {
  switch (current()) {
#if defined(QTRAJ_HAVE_AVX2)
    case Backend::Avx2:
      avx2::central_gradient(n, inv_2dq, f, out);
      return;
#endif
#if defined(QTRAJ_HAVE_NEON)
    case Backend::Neon:
      neon::central_gradient(n, inv_2dq, f, out);
      return;
#endif
    default:
      scalar::central_gradient(n, inv_2dq, f, out);
      return;
  }
}

}  // namespace qtraj::kernels
