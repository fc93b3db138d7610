#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the propagators and field post-processing.
// A scalar reference implementation always exists; AVX2 (x86-64) and NEON
// (aarch64) variants are selected at runtime and must agree with the scalar
// kernels bit-exactly for the pointwise stencils (reductions to ~1 ulp per
// element, summation order differs).
//
// All stencil kernels update interior nodes 1..n-2 only; the caller owns the
// boundary values.

namespace qtraj::kernels {

enum class Backend { Scalar, Avx2, Neon };

Backend active_backend();
std::string backend_name();

/// Force a specific backend (tests). Throws std::runtime_error if the backend
/// is not available on this machine/build.
void force_backend(Backend b);

/// Reset to the automatically detected backend (honours QTRAJ_KERNELS env var:
/// "scalar", "avx2" or "neon").
void reset_backend();

/// One forward-Euler step of i dpsi/dt = -1/2 lap(psi) + V psi on planar
/// (re, im) arrays:
///   out = psi + dt * ( (i/2) * lap(psi) / dq^2 - i * V * psi )
/// Boundary slots of the output are not written.
void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out);

/// sum_i (re[i]^2 + im[i]^2)
double sum_sq(std::size_t n, const double* re, const double* im);

/// max_i (re[i]^2 + im[i]^2)
double max_sq_mag(std::size_t n, const double* re, const double* im);

/// out[i] = (f[i+1] - 2 f[i] + f[i-1]) * inv_dq2 at interior nodes.
void laplacian(std::size_t n, double inv_dq2, const double* f, double* out);

/// out[i] = (f[i+1] - f[i-1]) * inv_2dq at interior nodes.
void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out);

// Scalar reference kernels, always available, used as the equivalence oracle.
namespace scalar {
void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out);
double sum_sq(std::size_t n, const double* re, const double* im);
double max_sq_mag(std::size_t n, const double* re, const double* im);
void laplacian(std::size_t n, double inv_dq2, const double* f, double* out);
void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out);
}  // namespace scalar

#if defined(QTRAJ_HAVE_AVX2)
namespace avx2 {
void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out);
double sum_sq(std::size_t n, const double* re, const double* im);
double max_sq_mag(std::size_t n, const double* re, const double* im);
void laplacian(std::size_t n, double inv_dq2, const double* f, double* out);
void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out);
}  // namespace avx2
#endif

#if defined(QTRAJ_HAVE_NEON)
namespace neon {
void ftcs_step(std::size_t n, double dt, double inv_dq2, const double* re_in,
               const double* im_in, const double* pot, double* re_out,
               double* im_out);
double sum_sq(std::size_t n, const double* re, const double* im);
double max_sq_mag(std::size_t n, const double* re, const double* im);
void laplacian(std::size_t n, double inv_dq2, const double* f, double* out);
void central_gradient(std::size_t n, double inv_2dq, const double* f,
                      double* out);
}  // namespace neon
#endif

}  // namespace qtraj::kernels
