#pragma once

#include <cstddef>
#include <vector>

namespace csbsd::density {

// Iterative radix-2 complex FFT over split re/im arrays. Grid sizes here are
// tiny fixed powers of two, so plans (bit-reversal table + twiddles) are
// precomputed once per size and shared.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);  // n must be a power of two >= 2

  std::size_t size() const { return n_; }

  // X[f] = sum_m x[m] e^{-2*pi*i*f*m/n}, in place
  void forward(double* re, double* im) const;
  // x[m] = (1/n) sum_f X[f] e^{+2*pi*i*f*m/n}, in place
  void inverse(double* re, double* im) const;

  // process-wide plan cache
  static const FftPlan& shared(std::size_t n);

 private:
  void transform(double* re, double* im, bool inv) const;

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<double> wre_, wim_;  // e^{-2*pi*i*k/n}, k < n/2
};

bool is_pow2(std::size_t n);

}  // namespace csbsd::density
