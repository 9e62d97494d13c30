#pragma once

#include <cstdint>
#include <span>

#include "csbsd/density.hpp"
#include "csbsd/sensing.hpp"

namespace csbsd::bp {

// Convolution policy for measurement-side updates: circular transforms
// (fast path) or linear convolution with boundary accumulation (validation
// path, deterministic summation order).
enum class ConvMode { circular_fft, direct_linear };

struct BpWarnings {
  std::uint64_t clamped_observations = 0;  // z values outside the grid range (wrapped circularly, clamped in the linear route)
  std::uint64_t degenerate_products = 0;   // all-zero products repaired in place
};

// Flat per-edge message storage plus per-column posteriors, one flooding
// engine's worth of state. Edge ids follow the graph's canonical entry order.
class MessageSet {
 public:
  MessageSet(const sensing::SensingGraph& g, density::GridPtr grid);

  std::size_t n_d() const { return n_d_; }
  std::size_t n_edges() const { return n_edges_; }
  std::size_t n_cols() const { return n_cols_; }
  const density::GridPtr& grid_ptr() const { return grid_; }
  const density::ValueGrid& grid() const { return *grid_; }

  std::span<double> a(std::size_t edge) { return {a_.data() + edge * n_d_, n_d_}; }
  std::span<const double> a(std::size_t edge) const { return {a_.data() + edge * n_d_, n_d_}; }
  std::span<double> b(std::size_t edge) { return {b_.data() + edge * n_d_, n_d_}; }
  std::span<const double> b(std::size_t edge) const { return {b_.data() + edge * n_d_, n_d_}; }
  std::span<double> posterior(std::size_t col) { return {post_.data() + col * n_d_, n_d_}; }
  std::span<const double> posterior(std::size_t col) const {
    return {post_.data() + col * n_d_, n_d_};
  }

  density::DiscreteDensity posterior_density(std::size_t col) const;

  BpWarnings& warnings() { return warnings_; }
  const BpWarnings& warnings() const { return warnings_; }

 private:
  density::GridPtr grid_;
  std::size_t n_d_, n_edges_, n_cols_;
  std::vector<double> a_, b_, post_;
  BpWarnings warnings_;
};

// All measurement messages uniform (the agnostic init), signal messages and
// posteriors uniform placeholders until their first update phase.
MessageSet init_messages(const sensing::SensingGraph& g, density::GridPtr grid);

// Signal phase: a_{i->j} = eta[ prior * prod_{k in N(i)\{j}} b_{k->i} ].
// All-zero products are repaired to the prior and counted.
void update_signal_messages(const sensing::SensingGraph& g,
                            const density::DiscreteDensity& prior_pmf, MessageSet& msgs,
                            double damping = 0.0);

// Measurement phase: b_{j->i} is the convolution of the noise density with the
// sign-adjusted signal messages of the other neighbors, evaluated against the
// observed z_j as a function of x_i (mirrored when the (i,j) sign is -1).
void update_measurement_messages(const sensing::SensingGraph& g, std::span<const double> z,
                                 const density::DiscreteDensity& noise_pmf, MessageSet& msgs,
                                 ConvMode mode = ConvMode::circular_fft, double damping = 0.0);

// Posterior phase: eta[ prior * prod over all incoming b ].
void compute_posteriors(const sensing::SensingGraph& g,
                        const density::DiscreteDensity& prior_pmf, MessageSet& msgs);

struct BpConfig {
  ConvMode mode = ConvMode::circular_fft;
  double damping = 0.0;  // 0 = off; d blends d*old + (1-d)*new
};

// One flooding sweep: signal messages, then measurement messages, then
// posteriors, each phase reading only the previous phase's output.
void run_iteration(const sensing::SensingGraph& g, std::span<const double> z,
                   const density::DiscreteDensity& prior_pmf,
                   const density::DiscreteDensity& noise_pmf, MessageSet& msgs,
                   const BpConfig& cfg = {});

}  // namespace csbsd::bp
