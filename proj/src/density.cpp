#include "csbsd/density.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "csbsd/fft.hpp"
#include "csbsd/kernels.hpp"

namespace csbsd::density {

namespace {

void require_same_grid(const DiscreteDensity& a, const DiscreteDensity& b, const char* op) {
  if (!a.grid().same_as(b.grid())) {
    throw std::invalid_argument(std::string(op) + ": grid mismatch");
  }
}

GridPtr require_grid(const GridPtr& g) {
  if (!g) throw std::invalid_argument("DiscreteDensity: null grid");
  return g;
}

}  // namespace

DiscreteDensity::DiscreteDensity(GridPtr grid)
    : grid_(require_grid(grid)), mass_(grid_->size(), 0.0) {}

DiscreteDensity::DiscreteDensity(GridPtr grid, std::vector<double> mass)
    : grid_(require_grid(grid)), mass_(std::move(mass)) {
  if (mass_.size() != grid_->size()) {
    throw std::invalid_argument("DiscreteDensity: mass length does not match grid");
  }
}

double DiscreteDensity::total() const { return kernels::sum(mass_.data(), mass_.size()); }

bool DiscreteDensity::is_normalized(double tol) const {
  const double t = total();
  return std::isfinite(t) && std::abs(t - 1.0) <= tol;
}

void DiscreteDensity::write_csv(std::ostream& os) const {
  os << "x_k,mass\n";
  char buf[64];
  for (std::size_t k = 0; k < mass_.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid_->point(k), mass_[k]);
    os << buf;
  }
}

DiscreteDensity gaussian(GridPtr grid, double mean, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mean)) {
    throw std::invalid_argument("gaussian: sigma must be positive and parameters finite");
  }
  DiscreteDensity d(std::move(grid));
  const auto& g = d.grid();
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.point(k) - mean;
    d[k] = std::exp(-x * x * inv2s2);
  }
  return normalize(d);
}

DiscreteDensity spike_slab_prior(GridPtr grid, double q, double sigma_x) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("spike_slab_prior: q must be in [0,1]");
  if (q > 0.0 && !(sigma_x > 0.0)) {
    throw std::invalid_argument("spike_slab_prior: sigma_x must be positive");
  }
  if (q == 0.0) return delta_at(std::move(grid), 0.0);
  DiscreteDensity slab = gaussian(grid, 0.0, sigma_x);
  kernels::scale(slab.mass().data(), q, slab.mass().data(), slab.size());
  slab[slab.grid().zero_index()] += 1.0 - q;
  return slab;
}

DiscreteDensity delta_at(GridPtr grid, double value, bool* clamped) {
  DiscreteDensity d(std::move(grid));
  bool in_range = true;
  const std::size_t k = d.grid().nearest_index(value, &in_range);
  d[k] = 1.0;
  if (clamped) *clamped = !in_range;
  return d;
}

DiscreteDensity normalize(const DiscreteDensity& d) {
  const double t = d.total();
  if (!std::isfinite(t) || t <= 0.0) {
    throw std::domain_error("normalize: total mass must be positive and finite");
  }
  DiscreteDensity out(d.grid_ptr());
  kernels::scale(d.mass().data(), 1.0 / t, out.mass().data(), d.size());
  return out;
}

DiscreteDensity product(const DiscreteDensity& a, const DiscreteDensity& b) {
  require_same_grid(a, b, "product");
  DiscreteDensity out(a.grid_ptr());
  kernels::mul(a.mass().data(), b.mass().data(), out.mass().data(), a.size());
  return out;
}

DiscreteDensity mirror(const DiscreteDensity& d) {
  const std::size_t n = d.size();
  DiscreteDensity out(d.grid_ptr());
  out[0] = d[0];
  for (std::size_t k = 1; k < n; ++k) out[k] = d[n - k];
  return out;
}

DiscreteDensity convolve_direct(const DiscreteDensity& a, const DiscreteDensity& b) {
  require_same_grid(a, b, "convolve_direct");
  DiscreteDensity out(a.grid_ptr());
  kernels::conv_clamped(a.mass().data(), b.mass().data(), out.mass().data(), a.size(),
                        a.grid().zero_index());
  return out;
}

DiscreteDensity convolve_fft(const DiscreteDensity& a, const DiscreteDensity& b) {
  require_same_grid(a, b, "convolve_fft");
  const std::size_t n = a.size();
  const std::size_t c = a.grid().zero_index();
  const FftPlan& plan = FftPlan::shared(n);
  std::vector<double> are(a.mass().begin(), a.mass().end()), aim(n, 0.0);
  std::vector<double> bre(b.mass().begin(), b.mass().end()), bim(n, 0.0);
  plan.forward(are.data(), aim.data());
  plan.forward(bre.data(), bim.data());
  kernels::cmul(are.data(), aim.data(), bre.data(), bim.data(), are.data(), aim.data(), n);
  plan.inverse(are.data(), aim.data());
  // index-space circular result sits offset by the zero bin; read at k + c
  DiscreteDensity out(a.grid_ptr());
  for (std::size_t k = 0; k < n; ++k) {
    const double v = are[(k + c) & (n - 1)];
    out[k] = v < 0.0 ? 0.0 : v;
  }
  return out;
}

Moments moments(const DiscreteDensity& d) {
  if (!d.is_normalized()) throw std::domain_error("moments: density must be normalized");
  const auto pts = d.grid().points();
  const double mean = kernels::dot(d.mass().data(), pts.data(), d.size());
  double m2 = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) m2 += d[k] * pts[k] * pts[k];
  return Moments{mean, m2, m2 - mean * mean};
}

}  // namespace csbsd::density
