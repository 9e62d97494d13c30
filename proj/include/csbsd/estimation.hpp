#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csbsd/model.hpp"
#include "csbsd/sensing.hpp"

namespace csbsd::estimation {

struct SupportEstimate {
  std::vector<double> x_full;         // embedded estimate, length n
  std::vector<double> x_supp;         // packed support values, length k
  std::vector<std::size_t> support;   // packed index -> original column
  bool overcomplete = false;          // k exceeded the number of measurements
  bool ls_fallback = false;           // sigma_n = 0 least-squares path taken
};

// Linear MMSE on the detected support:
//   x_s = (I/sx^2 + Phi_s^T Phi_s / sn^2)^{-1} Phi_s^T z / sn^2,
// solved with a Cholesky factorization of the regularized Gram matrix
// assembled from the adjacency lists. sigma_n = 0 degrades to a least-squares
// solve (tiny-ridge retry on rank deficiency). Throws on an empty support.
SupportEstimate mmse_on_support(const sensing::SensingGraph& g,
                                std::span<const std::uint8_t> states,
                                std::span<const double> z, const model::PriorParams& prior);

// Scatter packed support values back to full length (the h bijection).
std::vector<double> embed(std::span<const double> x_supp,
                          std::span<const std::size_t> support, std::size_t n);

// Independent oracle route for tests: materializes Phi_s densely and applies
// an explicit Gauss-Jordan inverse. Returns the embedded full-length estimate.
std::vector<double> mmse_oracle_dense(const sensing::SensingGraph& g,
                                      std::span<const std::uint8_t> states,
                                      std::span<const double> z,
                                      const model::PriorParams& prior);

}  // namespace csbsd::estimation
