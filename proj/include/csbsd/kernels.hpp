#pragma once

#include <cstddef>

// Vector kernels for the density hot loops. Every op has a scalar reference
// implementation and (where the ISA allows) a SIMD variant selected at runtime.
//
// Determinism contract: SIMD variants are bit-identical to the scalar reference.
// Elementwise ops use the same mul/add expression trees (no FMA contraction),
// and reductions accumulate in a canonical stride-4 lane order:
//   acc[l] += x[4k + l], result = (acc0 + acc1) + (acc2 + acc3), tail appended last.
// This keeps results independent of which backend the dispatcher picks.

namespace csbsd::kernels {

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);
bool backend_available(Backend b);

// Active backend: auto-detected on first use; BSD_KERNELS=scalar|avx2|neon overrides.
Backend active_backend();
void select_backend(Backend b);  // throws std::runtime_error if unavailable

// ============================================================================
// Dispatched ops
// ============================================================================

// out[i] = a[i] * b[i]
void mul(const double* a, const double* b, double* out, std::size_t n);

// out[i] = a[i] * s
void scale(const double* a, double s, double* out, std::size_t n);

// out[i] = (1 - t) * x[i] + t * y[i]   (message damping)
void mix(const double* x, const double* y, double t, double* out, std::size_t n);

// canonical stride-4 reduction
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);

// pointwise complex product, split re/im arrays; in-place safe (out == a)
void cmul(const double* are, const double* aim, const double* bre, const double* bim,
          double* ore, double* oim, std::size_t n);

// pointwise a * conj(b)
void cmul_conj(const double* are, const double* aim, const double* bre, const double* bim,
               double* ore, double* oim, std::size_t n);

// Linear convolution on a grid whose zero bin sits at index `center`;
// out-of-range targets accumulate on the boundary bins. out must not alias a/b.
//   out[clamp(i + j - center)] += a[i] * b[j]
void conv_clamped(const double* a, const double* b, double* out, std::size_t n,
                  std::size_t center);

// ============================================================================
// Per-backend entry points (exposed for equivalence tests)
// ============================================================================

namespace scalar {
void mul(const double* a, const double* b, double* out, std::size_t n);
void scale(const double* a, double s, double* out, std::size_t n);
void mix(const double* x, const double* y, double t, double* out, std::size_t n);
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void cmul(const double* are, const double* aim, const double* bre, const double* bim,
          double* ore, double* oim, std::size_t n);
void cmul_conj(const double* are, const double* aim, const double* bre, const double* bim,
               double* ore, double* oim, std::size_t n);
void conv_clamped(const double* a, const double* b, double* out, std::size_t n,
                  std::size_t center);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void mul(const double* a, const double* b, double* out, std::size_t n);
void scale(const double* a, double s, double* out, std::size_t n);
void mix(const double* x, const double* y, double t, double* out, std::size_t n);
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void cmul(const double* are, const double* aim, const double* bre, const double* bim,
          double* ore, double* oim, std::size_t n);
void cmul_conj(const double* are, const double* aim, const double* bre, const double* bim,
               double* ore, double* oim, std::size_t n);
void conv_clamped(const double* a, const double* b, double* out, std::size_t n,
                  std::size_t center);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void mul(const double* a, const double* b, double* out, std::size_t n);
void scale(const double* a, double s, double* out, std::size_t n);
void mix(const double* x, const double* y, double t, double* out, std::size_t n);
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void cmul(const double* are, const double* aim, const double* bre, const double* bim,
          double* ore, double* oim, std::size_t n);
void cmul_conj(const double* are, const double* aim, const double* bre, const double* bim,
               double* ore, double* oim, std::size_t n);
void conv_clamped(const double* a, const double* b, double* out, std::size_t n,
                  std::size_t center);
}  // namespace neon
#endif

}  // namespace csbsd::kernels
