#pragma once

#include <cstdint>
#include <vector>

#include "csbsd/bp.hpp"
#include "csbsd/density.hpp"

namespace csbsd::detection {

// Bayesian hypothesis test over the per-element posterior. The weights are the
// conditional-to-marginal density ratios of the same spike-and-slab
// discretization the engine uses, so q*w1[k] + (1-q)*w0[k] = 1 at every bin.
struct BhtWeights {
  density::DiscreteDensity w0;  // zero-state ratio: single-bin indicator / prior
  density::DiscreteDensity w1;  // active-state ratio: slab / prior
  double gamma;                 // decision threshold q / (1 - q)
};

// Requires q in (0,1).
BhtWeights build_weights(density::GridPtr grid, double q, double sigma_x);

// sum(w0 * post) / sum(w1 * post) compared against gamma; smaller-than means
// "active". Ties and empty denominators resolve to the zero state.
std::uint8_t detect_state(std::span<const double> posterior, const BhtWeights& w);

std::vector<std::uint8_t> detect_states(const bp::MessageSet& msgs, const BhtWeights& w);

// Per-element decision audit used by reports and debugging.
struct Rationale {
  std::size_t index;
  double ratio;       // test statistic (inf when the denominator vanishes)
  double gamma;
  std::uint8_t s_hat;
  double zero_bin_mass;  // posterior mass sitting on the zero bin
};

std::vector<Rationale> detection_rationale_report(const bp::MessageSet& msgs,
                                                  const BhtWeights& w);

}  // namespace csbsd::detection
