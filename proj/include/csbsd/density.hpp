#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "csbsd/grid.hpp"

namespace csbsd::density {

// A density discretized to point masses on a ValueGrid. Mass vectors are kept
// nonnegative by every constructor in this module; normalization is explicit.
class DiscreteDensity {
 public:
  explicit DiscreteDensity(GridPtr grid);  // all-zero mass
  DiscreteDensity(GridPtr grid, std::vector<double> mass);

  const ValueGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return mass_.size(); }

  std::span<const double> mass() const { return mass_; }
  std::span<double> mass() { return mass_; }
  double operator[](std::size_t k) const { return mass_[k]; }
  double& operator[](std::size_t k) { return mass_[k]; }

  double total() const;
  bool is_normalized(double tol = 1e-9) const;

  void write_csv(std::ostream& os) const;  // header "x_k,mass", one row per bin

 private:
  GridPtr grid_;
  std::vector<double> mass_;
};

// Spike-and-slab prior pmf: q * slab + (1-q) * spike, where the slab is the
// grid-sampled zero-mean Gaussian normalized on its own and the spike is a
// unit mass on the zero bin. Component-wise normalization keeps the
// hypothesis-test weight identity exact bin by bin.
DiscreteDensity spike_slab_prior(GridPtr grid, double q, double sigma_x);

// Grid-sampled Gaussian pmf, normalized. sigma must be positive.
DiscreteDensity gaussian(GridPtr grid, double mean, double sigma);

// Unit mass on the bin nearest `value`; out-of-range values clamp to the
// boundary bin and set *clamped when provided.
DiscreteDensity delta_at(GridPtr grid, double value, bool* clamped = nullptr);

// Scale to unit total mass. Throws std::domain_error if the total is zero,
// negative, or not finite.
DiscreteDensity normalize(const DiscreteDensity& d);

// Pointwise product (unnormalized). Grids must match.
DiscreteDensity product(const DiscreteDensity& a, const DiscreteDensity& b);

// Circular reflection about the zero bin: out[k] = in[(n - k) mod n].
// Realizes value negation on the grid; the index-0 endpoint maps to itself.
DiscreteDensity mirror(const DiscreteDensity& d);

// Convolution of independent summands, two boundary policies:
//  - convolve_direct: linear convolution; mass falling off the grid
//    accumulates on the nearest boundary bin (total mass preserved).
//  - convolve_fft: circular convolution via forward/inverse transforms;
//    off-grid mass wraps around. Tiny negative rounding residue clamps to 0.
DiscreteDensity convolve_direct(const DiscreteDensity& a, const DiscreteDensity& b);
DiscreteDensity convolve_fft(const DiscreteDensity& a, const DiscreteDensity& b);

struct Moments {
  double mean;
  double second_moment;
  double variance;
};

// Moments of a normalized density; throws std::domain_error on unnormalized input.
Moments moments(const DiscreteDensity& d);

}  // namespace csbsd::density
