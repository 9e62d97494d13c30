#include "csbsd/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace csbsd::density {

bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n < 2 || !is_pow2(n)) throw std::invalid_argument("FftPlan: size must be a power of two >= 2");
  bitrev_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }
  wre_.resize(n / 2);
  wim_.resize(n / 2);
  const double two_pi = 2.0 * M_PI;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = two_pi * static_cast<double>(k) / static_cast<double>(n);
    wre_[k] = std::cos(ang);
    wim_[k] = -std::sin(ang);
  }
}

void FftPlan::transform(double* re, double* im, bool inv) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t t = 0; t < half; ++t) {
        const double wr = wre_[t * step];
        const double wi = inv ? -wim_[t * step] : wim_[t * step];
        const std::size_t p = start + t;
        const std::size_t q = p + half;
        const double vr = re[q] * wr - im[q] * wi;
        const double vi = re[q] * wi + im[q] * wr;
        const double ur = re[p];
        const double ui = im[p];
        re[p] = ur + vr;
        im[p] = ui + vi;
        re[q] = ur - vr;
        im[q] = ui - vi;
      }
    }
  }
  if (inv) {
    const double s = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      re[i] *= s;
      im[i] *= s;
    }
  }
}

void FftPlan::forward(double* re, double* im) const { transform(re, im, false); }
void FftPlan::inverse(double* re, double* im) const { transform(re, im, true); }

const FftPlan& FftPlan::shared(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, FftPlan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, FftPlan(n)).first;
  return it->second;
}

}  // namespace csbsd::density
