#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csbsd/bp.hpp"
#include "csbsd/model.hpp"
#include "csbsd/sensing.hpp"

namespace csbsd::reconstruct {

struct CsBsdConfig {
  std::optional<double> epsilon;  // stopping residual; default sqrt(m)*sigma_n*1.1
  std::size_t max_iters = 10;
  std::size_t n_d = 64;           // density grid resolution (power of two)
  bp::ConvMode conv_mode = bp::ConvMode::circular_fft;
  double damping = 0.0;
  bool stop_on_residual = true;   // false: run exactly max_iters sweeps
  bool defer_mmse = false;        // detect/solve once after the last sweep only
  bool keep_best = false;         // return the lowest-residual iterate instead of the last
  bool record_estimates = false;  // keep every iterate's embedded estimate
  std::string debug_dump_dir;     // non-empty: write per-iteration posterior CSVs
};

struct ReconWarnings {
  std::uint64_t clamped_observations = 0;
  std::uint64_t degenerate_products = 0;
  std::uint64_t empty_support_iters = 0;
  std::uint64_t overcomplete_supports = 0;
  std::uint64_t ls_fallbacks = 0;
};

struct ReconResult {
  std::vector<double> x_hat;
  std::vector<std::uint8_t> s_hat;
  std::size_t iterations_run = 0;
  std::vector<double> residual_trace;  // one entry per evaluated iterate
  bool diverged = false;               // degenerate messages were repaired
  ReconWarnings warnings;
  std::vector<std::vector<double>> estimate_trace;  // filled when record_estimates
};

double stopping_epsilon_default(std::size_t m, double sigma_n);

// Detection-directed reconstruction: iterate BP sweeps, hypothesis-test the
// posteriors into a support, solve the support MMSE, and stop once the sensed
// residual drops to the noise floor (or max_iters). Returns the last iterate
// unless keep_best is set.
ReconResult cs_bsd(const sensing::SensingGraph& g, std::span<const double> z,
                   const model::PriorParams& prior, const CsBsdConfig& cfg = {});

// Support-aware baseline: one MMSE solve on the true support.
ReconResult oracle_mmse(const sensing::SensingGraph& g, std::span<const double> z,
                        std::span<const std::uint8_t> true_states,
                        const model::PriorParams& prior);

}  // namespace csbsd::reconstruct
