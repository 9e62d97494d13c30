#include "csbsd/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "csbsd/linalg.hpp"

namespace csbsd::model {

std::size_t SparseSignal::support_size() const {
  std::size_t k = 0;
  for (std::uint8_t s : states) k += s;
  return k;
}

SparseSignal generate_signal(std::size_t n, const PriorParams& prior,
                             const density::ValueGrid& grid, std::uint64_t seed) {
  if (!(prior.q >= 0.0 && prior.q <= 1.0)) throw std::invalid_argument("generate_signal: bad q");
  if (!(prior.sigma_x > 0.0)) throw std::invalid_argument("generate_signal: bad sigma_x");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, prior.sigma_x);
  const double clip = 3.0 * prior.sigma_x;
  SparseSignal sig;
  sig.values.assign(n, 0.0);
  sig.states.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (unif(rng) >= prior.q) continue;
    // redraw until the snapped value is off the zero bin, keeping the
    // state/value invariant intact
    for (int attempt = 0; attempt < 4096; ++attempt) {
      const double draw = std::clamp(gauss(rng), -clip, clip);
      const std::size_t k = grid.nearest_index(draw);
      if (k != grid.zero_index()) {
        sig.values[i] = grid.point(k);
        sig.states[i] = 1;
        break;
      }
    }
    if (!sig.states[i]) throw std::runtime_error("generate_signal: zero-bin redraw did not settle");
  }
  return sig;
}

Measurement sense(const sensing::SensingGraph& g, const SparseSignal& x, double sigma_n,
                  std::uint64_t noise_seed) {
  if (!(sigma_n >= 0.0)) throw std::invalid_argument("sense: sigma_n must be >= 0");
  Measurement m;
  m.sigma_n = sigma_n;
  m.noise_seed = noise_seed;
  m.z.assign(g.n_rows(), 0.0);
  g.matvec(x.values, m.z);
  if (sigma_n > 0.0) {
    std::mt19937_64 rng(noise_seed);
    std::normal_distribution<double> gauss(0.0, sigma_n);
    for (double& zj : m.z) zj += gauss(rng);
  }
  return m;
}

namespace {
double sensed_energy(const sensing::SensingGraph& g, const SparseSignal& x) {
  std::vector<double> y(g.n_rows(), 0.0);
  g.matvec(x.values, y);
  double e = 0.0;
  for (double v : y) e += v * v;
  return e;
}
}  // namespace

double snr_db(const sensing::SensingGraph& g, const SparseSignal& x, double sigma_n) {
  if (!(sigma_n >= 0.0)) throw std::invalid_argument("snr_db: sigma_n must be >= 0");
  if (sigma_n == 0.0) return std::numeric_limits<double>::infinity();
  const double e = sensed_energy(g, x);
  if (e == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(e / (static_cast<double>(g.n_rows()) * sigma_n * sigma_n));
}

double sigma_for_target_snr(const sensing::SensingGraph& g, const SparseSignal& x,
                            double target_db) {
  const double e = sensed_energy(g, x);
  if (e == 0.0) throw std::domain_error("sigma_for_target_snr: sensed signal has zero energy");
  const double lin = std::pow(10.0, target_db / 10.0);
  return std::sqrt(e / (static_cast<double>(g.n_rows()) * lin));
}

double ser(std::span<const std::uint8_t> s_hat, std::span<const std::uint8_t> s_true) {
  if (s_hat.size() != s_true.size() || s_true.empty()) {
    throw std::invalid_argument("ser: length mismatch");
  }
  std::size_t bad = 0;
  for (std::size_t i = 0; i < s_true.size(); ++i) bad += (s_hat[i] != 0) != (s_true[i] != 0);
  return static_cast<double>(bad) / static_cast<double>(s_true.size());
}

double mse(std::span<const double> x_hat, std::span<const double> x_true) {
  if (x_hat.size() != x_true.size() || x_true.empty()) {
    throw std::invalid_argument("mse: length mismatch");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x_true.size(); ++i) {
    const double d = x_hat[i] - x_true[i];
    num += d * d;
    den += x_true[i] * x_true[i];
  }
  if (den == 0.0) throw std::domain_error("mse: zero reference signal");
  return num / den;
}

double mar(std::span<const double> values) {
  double e = 0.0, mn = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (double v : values) {
    if (v == 0.0) continue;
    ++k;
    e += v * v;
    mn = std::min(mn, v * v);
  }
  if (k == 0) throw std::domain_error("mar: empty support");
  return mn / (e / static_cast<double>(k));
}

double snr_limit_db(std::size_t n, std::size_t m, std::size_t k, double mar_value) {
  if (k < 1 || n <= k) throw std::invalid_argument("snr_limit_db: need 1 <= k < n");
  if (m + 1 <= k) throw std::invalid_argument("snr_limit_db: need m >= k");
  if (!(mar_value > 0.0)) throw std::invalid_argument("snr_limit_db: mar must be positive");
  const double num = 2.0 * static_cast<double>(k) * std::log(static_cast<double>(n - k));
  const double den = static_cast<double>(m - k + 1) * mar_value;
  const double lin = num / den;
  if (lin == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(lin);
}

double mse_star(const sensing::SensingGraph& g_supp, const PriorParams& prior,
                std::span<const double> x_true_supp) {
  const std::size_t k = g_supp.n_cols();
  const std::size_t m = g_supp.n_rows();
  if (x_true_supp.size() != k) throw std::invalid_argument("mse_star: support length mismatch");
  if (!(prior.sigma_x > 0.0) || !(prior.sigma_n > 0.0)) {
    throw std::invalid_argument("mse_star: need positive sigma_x and sigma_n");
  }
  double energy = 0.0;
  for (double v : x_true_supp) energy += v * v;
  if (energy == 0.0) throw std::domain_error("mse_star: zero support energy");
  // dense assembly, independent of the estimator's sparse route
  std::vector<double> phi(m * k, 0.0);
  for (const sensing::Entry& en : g_supp.entries()) {
    phi[en.row * k + en.col] = en.sign > 0 ? 1.0 : -1.0;
  }
  const double wn = 1.0 / (prior.sigma_n * prior.sigma_n);
  const double wx = 1.0 / (prior.sigma_x * prior.sigma_x);
  std::vector<double> a(k * k, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double* row = phi.data() + j * k;
    for (std::size_t p = 0; p < k; ++p) {
      if (row[p] == 0.0) continue;
      for (std::size_t r = 0; r < k; ++r) {
        if (row[r] != 0.0) a[p * k + r] += row[p] * row[r];
      }
    }
  }
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t r = 0; r < k; ++r) a[p * k + r] *= wn;
    a[p * k + p] += wx;
  }
  if (!linalg::cholesky_factor(a, k)) throw std::runtime_error("mse_star: factorization failed");
  return linalg::inverse_trace(a, k) / energy;
}

}  // namespace csbsd::model
