#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csbsd/density.hpp"
#include "csbsd/sensing.hpp"

namespace csbsd::model {

// Signal/noise model parameters: activity probability q, slab deviation
// sigma_x, measurement noise deviation sigma_n.
struct PriorParams {
  double q = 0.05;
  double sigma_x = 10.0;
  double sigma_n = 1.0;
};

// Sparse realization; states[i] = 1 exactly when values[i] != 0.
struct SparseSignal {
  std::vector<double> values;
  std::vector<std::uint8_t> states;
  std::size_t support_size() const;
};

struct Measurement {
  std::vector<double> z;
  double sigma_n = 0.0;
  std::uint64_t noise_seed = 0;
};

struct MetricReport {
  double ser = 0.0;
  double mse = 0.0;
  double mse_star = 0.0;
  double snr_db = 0.0;
};

// Each element is active with probability q; active values draw N(0, sigma_x^2),
// clip to +-3 sigma_x, and snap to the grid. Draws that would snap onto the
// zero bin are redrawn so the state/value invariant holds.
SparseSignal generate_signal(std::size_t n, const PriorParams& prior,
                             const density::ValueGrid& grid, std::uint64_t seed);

// z = Phi x + noise, noise i.i.d. N(0, sigma_n^2). sigma_n = 0 is noiseless.
Measurement sense(const sensing::SensingGraph& g, const SparseSignal& x, double sigma_n,
                  std::uint64_t noise_seed);

// Realized SNR 10 log10(||Phi x||^2 / (M sigma_n^2)); +inf when sigma_n = 0.
double snr_db(const sensing::SensingGraph& g, const SparseSignal& x, double sigma_n);

// Noise level that realizes `target_db` for this (graph, signal) pair.
// Throws std::domain_error when the sensed signal has zero energy.
double sigma_for_target_snr(const sensing::SensingGraph& g, const SparseSignal& x,
                            double target_db);

// State error rate: mismatched states / n.
double ser(std::span<const std::uint8_t> s_hat, std::span<const std::uint8_t> s_true);

// ||x_hat - x_true||^2 / ||x_true||^2. Throws std::domain_error on a zero signal.
double mse(std::span<const double> x_hat, std::span<const double> x_true);

// Minimum-to-average power ratio over the support: min |x_j|^2 / (||x||^2 / k).
double mar(std::span<const double> values);

// Support-recovery SNR requirement (natural log):
//   2 k ln(n - k) / ((m - k + 1) mar), reported in dB.
// Requires k >= 1, n > k, m >= k; returns -inf when the ratio is zero (n = k+1).
double snr_limit_db(std::size_t n, std::size_t m, std::size_t k, double mar_value);

// Estimator-error trace formula on a given support submatrix, normalized by the
// realized support energy: Tr[(I/sx^2 + Phi_s^T Phi_s / sn^2)^{-1}] / ||x_s||^2.
double mse_star(const sensing::SensingGraph& g_supp, const PriorParams& prior,
                std::span<const double> x_true_supp);

}  // namespace csbsd::model
