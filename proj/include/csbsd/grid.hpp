#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace csbsd::density {

// Uniform value grid x_k = (k - n/2) * step, k = 0..n-1, with the zero value
// sitting exactly on index n/2. Symmetric about 0 up to the one-sided top
// endpoint: the range covered is [-half_range, half_range - step].
class ValueGrid {
 public:
  ValueGrid(std::size_t n_points, double half_range);

  std::size_t size() const { return n_; }
  double half_range() const { return half_range_; }
  double step() const { return step_; }
  std::size_t zero_index() const { return n_ / 2; }
  double point(std::size_t k) const { return points_[k]; }
  std::span<const double> points() const { return points_; }

  // Nearest grid index for a value; exact midpoints round toward the lower
  // index. Inputs outside the covered range clamp to the boundary index and
  // report in_range=false when asked.
  std::size_t nearest_index(double value, bool* in_range = nullptr) const;

  // Circular variant: the value is reduced modulo the period n*step before
  // snapping, matching the wrap-around arithmetic of the spectral convolution
  // route. Same midpoint rule; in_range=false when a reduction occurred.
  std::size_t wrapped_index(double value, bool* in_range = nullptr) const;

  bool same_as(const ValueGrid& other) const {
    return n_ == other.n_ && half_range_ == other.half_range_;
  }

 private:
  std::size_t n_;
  double half_range_;
  double step_;
  std::vector<double> points_;
};

using GridPtr = std::shared_ptr<const ValueGrid>;

GridPtr make_grid(std::size_t n_points, double half_range);

}  // namespace csbsd::density
