#include "csbsd/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "csbsd/fft.hpp"

namespace csbsd::density {

ValueGrid::ValueGrid(std::size_t n_points, double half_range)
    : n_(n_points), half_range_(half_range) {
  if (!is_pow2(n_points) || n_points < 4) {
    throw std::invalid_argument("ValueGrid: n_points must be a power of two >= 4");
  }
  if (!(half_range > 0.0) || !std::isfinite(half_range)) {
    throw std::invalid_argument("ValueGrid: half_range must be positive and finite");
  }
  step_ = 2.0 * half_range / static_cast<double>(n_points);
  points_.resize(n_points);
  const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(n_points / 2);
  for (std::size_t k = 0; k < n_points; ++k) {
    points_[k] = static_cast<double>(static_cast<std::ptrdiff_t>(k) - c) * step_;
  }
  points_[n_points / 2] = 0.0;  // exact, independent of rounding in step_
}

std::size_t ValueGrid::nearest_index(double value, bool* in_range) const {
  if (!std::isfinite(value)) throw std::invalid_argument("nearest_index: value must be finite");
  const double t = (value + half_range_) / step_;
  // round half toward the lower index
  const double r = std::ceil(t - 0.5);
  bool ok = true;
  std::ptrdiff_t k;
  if (r < 0.0) {
    k = 0;
    ok = false;
  } else if (r > static_cast<double>(n_ - 1)) {
    k = static_cast<std::ptrdiff_t>(n_ - 1);
    ok = false;
  } else {
    k = static_cast<std::ptrdiff_t>(r);
  }
  if (in_range) *in_range = ok;
  return static_cast<std::size_t>(k);
}

std::size_t ValueGrid::wrapped_index(double value, bool* in_range) const {
  if (!std::isfinite(value)) throw std::invalid_argument("wrapped_index: value must be finite");
  const double t = (value + half_range_) / step_;
  const double r = std::ceil(t - 0.5);
  const double nn = static_cast<double>(n_);
  if (in_range) *in_range = r >= 0.0 && r <= nn - 1.0;
  double rm = std::fmod(r, nn);  // exact: both operands are integral-valued
  if (rm < 0.0) rm += nn;
  return static_cast<std::size_t>(rm);
}

GridPtr make_grid(std::size_t n_points, double half_range) {
  return std::make_shared<ValueGrid>(n_points, half_range);
}

}  // namespace csbsd::density
