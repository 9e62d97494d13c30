#include "csbsd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace csbsd::linalg {

bool cholesky_factor(std::span<double> a, std::size_t k) {
  if (a.size() != k * k) throw std::invalid_argument("cholesky_factor: bad storage size");
  for (std::size_t j = 0; j < k; ++j) {
    double d = a[j * k + j];
    for (std::size_t t = 0; t < j; ++t) d -= a[j * k + t] * a[j * k + t];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double lj = std::sqrt(d);
    a[j * k + j] = lj;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a[i * k + j];
      for (std::size_t t = 0; t < j; ++t) s -= a[i * k + t] * a[j * k + t];
      a[i * k + j] = s / lj;
    }
  }
  return true;
}

void cholesky_solve(std::span<const double> chol, std::size_t k, std::span<double> b) {
  if (chol.size() != k * k || b.size() != k) throw std::invalid_argument("cholesky_solve: bad size");
  for (std::size_t i = 0; i < k; ++i) {  // L y = b
    double s = b[i];
    for (std::size_t t = 0; t < i; ++t) s -= chol[i * k + t] * b[t];
    b[i] = s / chol[i * k + i];
  }
  for (std::size_t ii = k; ii-- > 0;) {  // L^T x = y
    double s = b[ii];
    for (std::size_t t = ii + 1; t < k; ++t) s -= chol[t * k + ii] * b[t];
    b[ii] = s / chol[ii * k + ii];
  }
}

double inverse_trace(std::span<const double> chol, std::size_t k) {
  std::vector<double> e(k);
  double tr = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    std::fill(e.begin(), e.end(), 0.0);
    e[a] = 1.0;
    cholesky_solve(chol, k, e);
    tr += e[a];
  }
  return tr;
}

std::vector<double> invert_dense(std::vector<double> a, std::size_t k) {
  if (a.size() != k * k) throw std::invalid_argument("invert_dense: bad storage size");
  std::vector<double> inv(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) inv[i * k + i] = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    double best = std::abs(a[col * k + col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double v = std::abs(a[r * k + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best)) throw std::domain_error("invert_dense: singular");
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) {
        std::swap(a[piv * k + c], a[col * k + c]);
        std::swap(inv[piv * k + c], inv[col * k + c]);
      }
    }
    const double d = a[col * k + col];
    for (std::size_t c = 0; c < k; ++c) {
      a[col * k + c] /= d;
      inv[col * k + c] /= d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r * k + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) {
        a[r * k + c] -= f * a[col * k + c];
        inv[r * k + c] -= f * inv[col * k + c];
      }
    }
  }
  return inv;
}

}  // namespace csbsd::linalg
