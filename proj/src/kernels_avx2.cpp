#include "csbsd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

// AVX2 variants. No FMA on purpose: plain mul/add keeps every lane bit-identical
// to the scalar reference, so dispatch choice never changes numeric output.

namespace csbsd::kernels::avx2 {

void mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void scale(const double* a, double s, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  }
  for (; i < n; ++i) out[i] = a[i] * s;
}

void mix(const double* x, const double* y, double t, double* out, std::size_t n) {
  const double s = 1.0 - t;
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d vt = _mm256_set1_pd(t);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_mul_pd(_mm256_loadu_pd(x + i), vs);
    const __m256d vy = _mm256_mul_pd(_mm256_loadu_pd(y + i), vt);
    _mm256_storeu_pd(out + i, _mm256_add_pd(vx, vy));
  }
  for (; i < n; ++i) out[i] = x[i] * s + y[i] * t;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double lane[4];
  _mm256_storeu_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double lane[4];
  _mm256_storeu_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void cmul(const double* are, const double* aim, const double* bre, const double* bim,
          double* ore, double* oim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(are + i);
    const __m256d ai = _mm256_loadu_pd(aim + i);
    const __m256d br = _mm256_loadu_pd(bre + i);
    const __m256d bi = _mm256_loadu_pd(bim + i);
    const __m256d re = _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
    const __m256d im = _mm256_add_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br));
    _mm256_storeu_pd(ore + i, re);
    _mm256_storeu_pd(oim + i, im);
  }
  for (; i < n; ++i) {
    const double re = are[i] * bre[i] - aim[i] * bim[i];
    const double im = are[i] * bim[i] + aim[i] * bre[i];
    ore[i] = re;
    oim[i] = im;
  }
}

void cmul_conj(const double* are, const double* aim, const double* bre, const double* bim,
               double* ore, double* oim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(are + i);
    const __m256d ai = _mm256_loadu_pd(aim + i);
    const __m256d br = _mm256_loadu_pd(bre + i);
    const __m256d bi = _mm256_loadu_pd(bim + i);
    const __m256d re = _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
    const __m256d im = _mm256_sub_pd(_mm256_mul_pd(ai, br), _mm256_mul_pd(ar, bi));
    _mm256_storeu_pd(ore + i, re);
    _mm256_storeu_pd(oim + i, im);
  }
  for (; i < n; ++i) {
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
    const __m256d vai = _mm256_set1_pd(ai);
    const std::ptrdiff_t ci = c - i;
    const std::ptrdiff_t jlo = std::max<std::ptrdiff_t>(0, ci);
    const std::ptrdiff_t jhi = std::min<std::ptrdiff_t>(sn, ci + sn);
    std::ptrdiff_t j = 0;
    for (; j < jlo; ++j) out[0] += ai * b[j];
    // in-range span: distinct target slots, one contribution per (i, j) pair,
    // so vector read-modify-write keeps scalar accumulation order per slot
    for (; j + 4 <= jhi; j += 4) {
      double* o = out + (j - ci);
      const __m256d prod = _mm256_mul_pd(vai, _mm256_loadu_pd(b + j));
      _mm256_storeu_pd(o, _mm256_add_pd(_mm256_loadu_pd(o), prod));
    }
    for (; j < jhi; ++j) out[j - ci] += ai * b[j];
    for (; j < sn; ++j) out[n - 1] += ai * b[j];
  }
}

}  // namespace csbsd::kernels::avx2

#endif  // x86_64
