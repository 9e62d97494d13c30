#include "csbsd/reconstruct.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "csbsd/detection.hpp"
#include "csbsd/estimation.hpp"

namespace csbsd::reconstruct {

using sensing::SensingGraph;

double stopping_epsilon_default(std::size_t m, double sigma_n) {
  return std::sqrt(static_cast<double>(m)) * sigma_n * 1.1;
}

namespace {

void dump_posteriors(const std::string& dir, std::size_t iter, const bp::MessageSet& msgs) {
  char name[64];
  std::snprintf(name, sizeof name, "/posteriors_iter_%03zu.csv", iter);
  std::ofstream os(dir + name);
  if (!os) throw std::runtime_error("cs_bsd: cannot open posterior dump file in " + dir);
  os << "node,x_k,mass\n";
  char buf[96];
  for (std::size_t i = 0; i < msgs.n_cols(); ++i) {
    const auto post = msgs.posterior(i);
    for (std::size_t k = 0; k < post.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, msgs.grid().point(k), post[k]);
      os << buf;
    }
  }
}

}  // namespace

ReconResult cs_bsd(const SensingGraph& g, std::span<const double> z,
                   const model::PriorParams& prior, const CsBsdConfig& cfg) {
  if (z.size() != g.n_rows()) throw std::invalid_argument("cs_bsd: z length mismatch");
  if (!(prior.q > 0.0 && prior.q < 1.0)) throw std::invalid_argument("cs_bsd: q must be in (0,1)");
  if (!(prior.sigma_x > 0.0)) throw std::invalid_argument("cs_bsd: sigma_x must be positive");
  if (!(prior.sigma_n > 0.0)) throw std::invalid_argument("cs_bsd: sigma_n must be positive");
  if (cfg.max_iters < 1) throw std::invalid_argument("cs_bsd: max_iters must be >= 1");
  if (!(cfg.damping >= 0.0 && cfg.damping < 1.0)) {
    throw std::invalid_argument("cs_bsd: damping must be in [0,1)");
  }
  if (cfg.epsilon && !(*cfg.epsilon >= 0.0)) {
    throw std::invalid_argument("cs_bsd: epsilon must be >= 0");
  }

  const auto grid = density::make_grid(cfg.n_d, 3.0 * prior.sigma_x);
  const auto prior_pmf = density::spike_slab_prior(grid, prior.q, prior.sigma_x);
  const auto noise_pmf = density::gaussian(grid, 0.0, prior.sigma_n);
  const auto weights = detection::build_weights(grid, prior.q, prior.sigma_x);
  const double eps = cfg.epsilon ? *cfg.epsilon : stopping_epsilon_default(g.n_rows(), prior.sigma_n);
  const bp::BpConfig bp_cfg{cfg.conv_mode, cfg.damping};

  bp::MessageSet msgs = bp::init_messages(g, grid);
  ReconResult res;
  res.x_hat.assign(g.n_cols(), 0.0);
  res.s_hat.assign(g.n_cols(), 0);

  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  std::vector<std::uint8_t> best_s;

  for (std::size_t l = 1; l <= cfg.max_iters; ++l) {
    bp::run_iteration(g, z, prior_pmf, noise_pmf, msgs, bp_cfg);
    res.iterations_run = l;
    if (!cfg.debug_dump_dir.empty()) dump_posteriors(cfg.debug_dump_dir, l, msgs);

    const bool evaluate = !cfg.defer_mmse || l == cfg.max_iters;
    if (!evaluate) continue;

    std::vector<std::uint8_t> s = detection::detect_states(msgs, weights);
    std::vector<double> x(g.n_cols(), 0.0);
    bool any = false;
    for (std::uint8_t si : s) {
      if (si) {
        any = true;
        break;
      }
    }
    if (!any) {
      ++res.warnings.empty_support_iters;
    } else {
      auto est = estimation::mmse_on_support(g, s, z, prior);
      x = std::move(est.x_full);
      if (est.overcomplete) ++res.warnings.overcomplete_supports;
      if (est.ls_fallback) ++res.warnings.ls_fallbacks;
    }
    const double r = g.residual_norm(x, z);
    res.residual_trace.push_back(r);
    res.x_hat = std::move(x);
    res.s_hat = std::move(s);
    if (cfg.record_estimates) res.estimate_trace.push_back(res.x_hat);
    if (cfg.keep_best && r < best_residual) {
      best_residual = r;
      best_x = res.x_hat;
      best_s = res.s_hat;
    }
    if (cfg.stop_on_residual && r <= eps) break;
  }

  if (cfg.keep_best && !best_x.empty()) {
    res.x_hat = std::move(best_x);
    res.s_hat = std::move(best_s);
  }
  res.warnings.clamped_observations = msgs.warnings().clamped_observations;
  res.warnings.degenerate_products = msgs.warnings().degenerate_products;
  res.diverged = res.warnings.degenerate_products > 0;
  return res;
}

ReconResult oracle_mmse(const SensingGraph& g, std::span<const double> z,
                        std::span<const std::uint8_t> true_states,
                        const model::PriorParams& prior) {
  ReconResult res;
  res.iterations_run = 1;
  res.s_hat.assign(true_states.begin(), true_states.end());
  res.x_hat.assign(g.n_cols(), 0.0);
  bool any = false;
  for (std::uint8_t s : true_states) {
    if (s) {
      any = true;
      break;
    }
  }
  if (any) {
    auto est = estimation::mmse_on_support(g, true_states, z, prior);
    res.x_hat = std::move(est.x_full);
    if (est.overcomplete) ++res.warnings.overcomplete_supports;
    if (est.ls_fallback) ++res.warnings.ls_fallbacks;
  } else {
    ++res.warnings.empty_support_iters;
  }
  res.residual_trace.push_back(g.residual_norm(res.x_hat, z));
  return res;
}

}  // namespace csbsd::reconstruct
