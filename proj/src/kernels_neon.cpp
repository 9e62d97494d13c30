#include "csbsd/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>

// NEON variants (2-wide f64). Same expression trees and stride-4 reduction
// order as the scalar reference; see kernels.hpp for the determinism contract.

namespace csbsd::kernels::neon {

void mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void scale(const double* a, double s, double* out, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vs));
  }
  for (; i < n; ++i) out[i] = a[i] * s;
}

void mix(const double* x, const double* y, double t, double* out, std::size_t n) {
  const double s = 1.0 - t;
  const float64x2_t vs = vdupq_n_f64(s);
  const float64x2_t vt = vdupq_n_f64(t);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vmulq_f64(vld1q_f64(x + i), vs);
    const float64x2_t vy = vmulq_f64(vld1q_f64(y + i), vt);
    vst1q_f64(out + i, vaddq_f64(vx, vy));
  }
  for (; i < n; ++i) out[i] = x[i] * s + y[i] * t;
}

double sum(const double* a, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);  // lanes 0,1 of the stride-4 order
  float64x2_t acc23 = vdupq_n_f64(0.0);  // lanes 2,3
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vld1q_f64(a + i));
    acc23 = vaddq_f64(acc23, vld1q_f64(a + i + 2));
  }
  double s = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
             (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (; i < n; ++i) s += a[i];
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double s = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
             (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void cmul(const double* are, const double* aim, const double* bre, const double* bim,
          double* ore, double* oim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ar = vld1q_f64(are + i);
    const float64x2_t ai = vld1q_f64(aim + i);
    const float64x2_t br = vld1q_f64(bre + i);
    const float64x2_t bi = vld1q_f64(bim + i);
    const float64x2_t re = vsubq_f64(vmulq_f64(ar, br), vmulq_f64(ai, bi));
    const float64x2_t im = vaddq_f64(vmulq_f64(ar, bi), vmulq_f64(ai, br));
    vst1q_f64(ore + i, re);
    vst1q_f64(oim + i, im);
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
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ar = vld1q_f64(are + i);
    const float64x2_t ai = vld1q_f64(aim + i);
    const float64x2_t br = vld1q_f64(bre + i);
    const float64x2_t bi = vld1q_f64(bim + i);
    const float64x2_t re = vaddq_f64(vmulq_f64(ar, br), vmulq_f64(ai, bi));
    const float64x2_t im = vsubq_f64(vmulq_f64(ai, br), vmulq_f64(ar, bi));
    vst1q_f64(ore + i, re);
    vst1q_f64(oim + i, im);
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
    const float64x2_t vai = vdupq_n_f64(ai);
    const std::ptrdiff_t ci = c - i;
    const std::ptrdiff_t jlo = std::max<std::ptrdiff_t>(0, ci);
    const std::ptrdiff_t jhi = std::min<std::ptrdiff_t>(sn, ci + sn);
    std::ptrdiff_t j = 0;
    for (; j < jlo; ++j) out[0] += ai * b[j];
    for (; j + 2 <= jhi; j += 2) {
      double* o = out + (j - ci);
      const float64x2_t prod = vmulq_f64(vai, vld1q_f64(b + j));
      vst1q_f64(o, vaddq_f64(vld1q_f64(o), prod));
    }
    for (; j < jhi; ++j) out[j - ci] += ai * b[j];
    for (; j < sn; ++j) out[n - 1] += ai * b[j];
  }
}

}  // namespace csbsd::kernels::neon

#endif  // __aarch64__
