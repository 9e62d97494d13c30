#include "csbsd/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "csbsd/linalg.hpp"

namespace csbsd::estimation {

using sensing::SensingGraph;

std::vector<double> embed(std::span<const double> x_supp,
                          std::span<const std::size_t> support, std::size_t n) {
  if (x_supp.size() != support.size()) throw std::invalid_argument("embed: length mismatch");
  std::vector<double> full(n, 0.0);
  for (std::size_t t = 0; t < support.size(); ++t) {
    if (support[t] >= n) throw std::invalid_argument("embed: support index out of range");
    full[support[t]] = x_supp[t];
  }
  return full;
}

SupportEstimate mmse_on_support(const SensingGraph& g, std::span<const std::uint8_t> states,
                                std::span<const double> z, const model::PriorParams& prior) {
  if (states.size() != g.n_cols()) throw std::invalid_argument("mmse_on_support: states mismatch");
  if (z.size() != g.n_rows()) throw std::invalid_argument("mmse_on_support: z length mismatch");
  if (!(prior.sigma_x > 0.0)) throw std::invalid_argument("mmse_on_support: bad sigma_x");
  if (!(prior.sigma_n >= 0.0)) throw std::invalid_argument("mmse_on_support: bad sigma_n");

  SupportEstimate est;
  std::vector<std::uint32_t> packed(g.n_cols(), 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i]) {
      packed[i] = static_cast<std::uint32_t>(est.support.size());
      est.support.push_back(i);
    }
  }
  const std::size_t k = est.support.size();
  if (k == 0) throw std::invalid_argument("mmse_on_support: empty support");
  est.overcomplete = k > g.n_rows();

  // Gram matrix and right-hand side straight from the adjacency lists
  std::vector<double> gram(k * k, 0.0);
  std::vector<double> rhs(k, 0.0);
  for (std::size_t j = 0; j < g.n_rows(); ++j) {
    const auto nbrs = g.row_neighbors(j);
    for (const sensing::Adj& p : nbrs) {
      if (!states[p.index]) continue;
      const double sp = p.sign > 0 ? 1.0 : -1.0;
      const std::size_t tp = packed[p.index];
      rhs[tp] += sp * z[j];
      for (const sensing::Adj& r : nbrs) {
        if (!states[r.index]) continue;
        gram[tp * k + packed[r.index]] += sp * (r.sign > 0 ? 1.0 : -1.0);
      }
    }
  }

  std::vector<double> a(k * k);
  const bool noiseless = prior.sigma_n == 0.0;
  if (!noiseless) {
    const double wn = 1.0 / (prior.sigma_n * prior.sigma_n);
    const double wx = 1.0 / (prior.sigma_x * prior.sigma_x);
    for (std::size_t t = 0; t < k * k; ++t) a[t] = gram[t] * wn;
    for (std::size_t t = 0; t < k; ++t) a[t * k + t] += wx;
    for (std::size_t t = 0; t < k; ++t) rhs[t] *= wn;
    if (!linalg::cholesky_factor(a, k)) {
      throw std::runtime_error("mmse_on_support: regularized system not SPD");
    }
  } else {
    // least-squares limit: normal equations, jittered retry on rank deficiency
    est.ls_fallback = true;
    a = gram;
    if (!linalg::cholesky_factor(a, k)) {
      double tr = 0.0;
      for (std::size_t t = 0; t < k; ++t) tr += gram[t * k + t];
      const double jitter = (tr > 0.0 ? tr / static_cast<double>(k) : 1.0) * 1e-12;
      a = gram;
      for (std::size_t t = 0; t < k; ++t) a[t * k + t] += jitter;
      if (!linalg::cholesky_factor(a, k)) {
        throw std::runtime_error("mmse_on_support: singular least-squares system");
      }
    }
  }
  linalg::cholesky_solve(a, k, rhs);
  est.x_supp = std::move(rhs);
  est.x_full = embed(est.x_supp, est.support, g.n_cols());
  return est;
}

std::vector<double> mmse_oracle_dense(const SensingGraph& g,
                                      std::span<const std::uint8_t> states,
                                      std::span<const double> z,
                                      const model::PriorParams& prior) {
  if (states.size() != g.n_cols()) throw std::invalid_argument("mmse_oracle_dense: states mismatch");
  if (!(prior.sigma_n > 0.0)) throw std::invalid_argument("mmse_oracle_dense: needs sigma_n > 0");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i]) support.push_back(i);
  }
  const std::size_t k = support.size();
  if (k == 0) throw std::invalid_argument("mmse_oracle_dense: empty support");
  const std::size_t m = g.n_rows();
  std::vector<double> phi(m * k, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    for (const sensing::Adj& nb : g.col_neighbors(support[t])) {
      phi[nb.index * k + t] = nb.sign > 0 ? 1.0 : -1.0;
    }
  }
  const double wn = 1.0 / (prior.sigma_n * prior.sigma_n);
  const double wx = 1.0 / (prior.sigma_x * prior.sigma_x);
  std::vector<double> a(k * k, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t p = 0; p < k; ++p) {
      const double vp = phi[j * k + p];
      if (vp == 0.0) continue;
      for (std::size_t r = 0; r < k; ++r) a[p * k + r] += vp * phi[j * k + r] * wn;
    }
  }
  for (std::size_t p = 0; p < k; ++p) a[p * k + p] += wx;
  const std::vector<double> inv = linalg::invert_dense(std::move(a), k);
  std::vector<double> rhs(k, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t p = 0; p < k; ++p) rhs[p] += phi[j * k + p] * z[j] * wn;
  }
  std::vector<double> xs(k, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    double s = 0.0;
    for (std::size_t r = 0; r < k; ++r) s += inv[p * k + r] * rhs[r];
    xs[p] = s;
  }
  return embed(xs, support, g.n_cols());
}

}  // namespace csbsd::estimation
