#include "csbsd/kernels.hpp"

#include <algorithm>

// Reference kernels. Loop shapes deliberately mirror the SIMD variants
// (4-wide blocking, explicit tail handling) so both produce identical bits.

namespace csbsd::kernels::scalar {

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void scale(const double* a, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}

void mix(const double* x, const double* y, double t, double* out, std::size_t n) {
  const double s = 1.0 - t;
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * s + y[i] * t;
}

double sum(const double* a, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 += a[i];
    acc1 += a[i + 1];
    acc2 += a[i + 2];
    acc3 += a[i + 3];
  }
  double s = (acc0 + acc1) + (acc2 + acc3);
  for (; i < n; ++i) s += a[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 += a[i] * b[i];
    acc1 += a[i + 1] * b[i + 1];
    acc2 += a[i + 2] * b[i + 2];
    acc3 += a[i + 3] * b[i + 3];
  }
  double s = (acc0 + acc1) + (acc2 + acc3);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void cmul(const double* are, const double* aim, const double* bre, const double* bim,
          double* ore, double* oim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = are[i] * bre[i] - aim[i] * bim[i];
    const double im = are[i] * bim[i] + aim[i] * bre[i];
    ore[i] = re;
    oim[i] = im;
  }
}

void cmul_conj(const double* are, const double* aim, const double* bre, const double* bim,
               double* ore, double* oim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = are[i] * bre[i] + aim[i] * bim[i];
    const double im = aim[i] * bre[i] - are[i] * bim[i];
    ore[i] = re;
    oim[i] = im;
  }
}

void conv_clamped(const double* a, const double* b, double* out, std::size_t n,
                  std::size_t center) {
  std::fill(out, out + n, 0.0);
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(center);
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const std::ptrdiff_t ci = c - i;  // t = i + j - c in [0, n-1] <=> j in [ci, ci+n-1]
    const std::ptrdiff_t jlo = std::max<std::ptrdiff_t>(0, ci);
    const std::ptrdiff_t jhi = std::min<std::ptrdiff_t>(sn, ci + sn);
    std::ptrdiff_t j = 0;
    for (; j < jlo; ++j) out[0] += ai * b[j];  // below-range mass piles on bin 0
    for (; j < jhi; ++j) out[j - ci] += ai * b[j];
    for (; j < sn; ++j) out[n - 1] += ai * b[j];  // above-range mass on the top bin
  }
}

}  // namespace csbsd::kernels::scalar
