#include "csbsd/detection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "csbsd/kernels.hpp"

namespace csbsd::detection {

using density::DiscreteDensity;

BhtWeights build_weights(density::GridPtr grid, double q, double sigma_x) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("build_weights: q must be in (0,1)");
  const DiscreteDensity slab = density::gaussian(grid, 0.0, sigma_x);
  const DiscreteDensity prior = density::spike_slab_prior(grid, q, sigma_x);
  DiscreteDensity w0(grid), w1(grid);
  const std::size_t zi = prior.grid().zero_index();
  for (std::size_t k = 0; k < prior.size(); ++k) {
    const double p = prior[k];
    w1[k] = p > 0.0 ? slab[k] / p : 0.0;
    w0[k] = (k == zi && p > 0.0) ? 1.0 / p : 0.0;
  }
  return BhtWeights{std::move(w0), std::move(w1), q / (1.0 - q)};
}

std::uint8_t detect_state(std::span<const double> posterior, const BhtWeights& w) {
  const std::size_t n = posterior.size();
  if (n != w.w0.size()) throw std::invalid_argument("detect_state: grid size mismatch");
  // w0 is a single-bin indicator ratio: the numerator is just the scaled
  // posterior mass on the zero bin
  const double num = w.w0[w.w0.grid().zero_index()] * posterior[w.w0.grid().zero_index()];
  const double den = kernels::dot(w.w1.mass().data(), posterior.data(), n);
  if (!(den > 0.0)) return 0;  // no active-state evidence at all
  return (num / den < w.gamma) ? 1 : 0;  // ties resolve to the zero state
}

std::vector<std::uint8_t> detect_states(const bp::MessageSet& msgs, const BhtWeights& w) {
  std::vector<std::uint8_t> s(msgs.n_cols(), 0);
  for (std::size_t i = 0; i < msgs.n_cols(); ++i) s[i] = detect_state(msgs.posterior(i), w);
  return s;
}

std::vector<Rationale> detection_rationale_report(const bp::MessageSet& msgs,
                                                  const BhtWeights& w) {
  std::vector<Rationale> rows;
  rows.reserve(msgs.n_cols());
  const std::size_t zi = w.w0.grid().zero_index();
  for (std::size_t i = 0; i < msgs.n_cols(); ++i) {
    const auto post = msgs.posterior(i);
    const double num = w.w0[zi] * post[zi];
    const double den = kernels::dot(w.w1.mass().data(), post.data(), post.size());
    const double ratio = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
    rows.push_back(Rationale{i, ratio, w.gamma, detect_state(post, w), post[zi]});
  }
  return rows;
}

}  // namespace csbsd::detection
