#include "csbsd/bp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "csbsd/fft.hpp"
#include "csbsd/kernels.hpp"

namespace csbsd::bp {

using density::DiscreteDensity;
using sensing::Adj;
using sensing::SensingGraph;

MessageSet::MessageSet(const SensingGraph& g, density::GridPtr grid)
    : grid_(std::move(grid)),
      n_d_(grid_->size()),
      n_edges_(g.n_edges()),
      n_cols_(g.n_cols()) {
  const double u = 1.0 / static_cast<double>(n_d_);
  a_.assign(n_edges_ * n_d_, u);
  b_.assign(n_edges_ * n_d_, u);
  post_.assign(n_cols_ * n_d_, u);
}

DiscreteDensity MessageSet::posterior_density(std::size_t col) const {
  auto p = posterior(col);
  return DiscreteDensity(grid_, std::vector<double>(p.begin(), p.end()));
}

MessageSet init_messages(const SensingGraph& g, density::GridPtr grid) {
  return MessageSet(g, std::move(grid));
}

namespace {

// Relative mass floor applied after each normalization.  The exact message
// densities have strictly positive tails (Gaussian factors never vanish), but
// sharpened messages underflow them to literal zeros, which turns soft
// evidence conflicts into hard contradictions and cascades into prior-repair
// storms on loopy graphs.  Keeping a representable floor restores the soft
// reweighting while perturbing any finite-tolerance comparison by O(1e-60).
constexpr double kMassFloor = 1e-60;

// eta with degenerate repair: normalize dst in place; on zero/non-finite total
// copy `fallback` instead and bump the counter.
void normalize_or_repair(double* dst, const double* fallback, std::size_t n,
                         std::uint64_t& degenerate) {
  const double t = kernels::sum(dst, n);
  if (std::isfinite(t) && t > 0.0) {
    kernels::scale(dst, 1.0 / t, dst, n);
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) peak = std::max(peak, dst[k]);
    const double floor_val = peak * kMassFloor;
    bool raised = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (dst[k] < floor_val) {
        dst[k] = floor_val;
        raised = true;
      }
    }
    if (raised) kernels::scale(dst, 1.0 / kernels::sum(dst, n), dst, n);
  } else {
    for (std::size_t k = 0; k < n; ++k) dst[k] = fallback[k];
    ++degenerate;
  }
}

void check_grid(const MessageSet& msgs, const DiscreteDensity& d, const char* what) {
  if (!d.grid().same_as(msgs.grid())) {
    throw std::invalid_argument(std::string("bp: ") + what + " grid mismatch");
  }
}

}  // namespace

void update_signal_messages(const SensingGraph& g, const DiscreteDensity& prior_pmf,
                            MessageSet& msgs, double damping) {
  check_grid(msgs, prior_pmf, "prior");
  const std::size_t n = msgs.n_d();
  const double* prior = prior_pmf.mass().data();
  std::vector<double> cand(n);
  for (std::size_t i = 0; i < g.n_cols(); ++i) {
    const auto nbrs = g.col_neighbors(i);
    for (std::size_t t = 0; t < nbrs.size(); ++t) {
      for (std::size_t k = 0; k < n; ++k) cand[k] = prior[k];
      for (std::size_t u = 0; u < nbrs.size(); ++u) {
        if (u == t) continue;  // extrinsic: exclude the target measurement
        kernels::mul(cand.data(), msgs.b(nbrs[u].edge).data(), cand.data(), n);
      }
      normalize_or_repair(cand.data(), prior, n, msgs.warnings().degenerate_products);
      auto out = msgs.a(nbrs[t].edge);
      if (damping > 0.0) {
        kernels::mix(cand.data(), out.data(), damping, out.data(), n);
      } else {
        for (std::size_t k = 0; k < n; ++k) out[k] = cand[k];
      }
    }
  }
}

void update_measurement_messages(const SensingGraph& g, std::span<const double> z,
                                 const DiscreteDensity& noise_pmf, MessageSet& msgs,
                                 ConvMode mode, double damping) {
  check_grid(msgs, noise_pmf, "noise");
  if (z.size() != g.n_rows()) throw std::invalid_argument("bp: z length mismatch");
  const std::size_t n = msgs.n_d();
  const std::size_t c = msgs.grid().zero_index();
  const std::size_t ne = msgs.n_edges();
  std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  std::vector<double> cand(n);

  if (mode == ConvMode::circular_fft) {
    const density::FftPlan& plan = density::FftPlan::shared(n);
    // spectra of all signal messages (and of the noise pmf) once per sweep
    std::vector<double> are(ne * n), aim(ne * n, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto am = msgs.a(e);
      for (std::size_t k = 0; k < n; ++k) are[e * n + k] = am[k];
      plan.forward(are.data() + e * n, aim.data() + e * n);
    }
    std::vector<double> nre(noise_pmf.mass().begin(), noise_pmf.mass().end()), nim(n, 0.0);
    plan.forward(nre.data(), nim.data());
    std::vector<double> sre(n), sim(n);
    for (std::size_t j = 0; j < g.n_rows(); ++j) {
      const auto nbrs = g.row_neighbors(j);
      if (nbrs.empty()) continue;
      // circular arithmetic: observations beyond the range wrap (mod period)
      // so their evidence stays consistent with the circular convolutions
      bool in_range = true;
      const std::size_t kz = msgs.grid().wrapped_index(z[j], &in_range);
      if (!in_range) ++msgs.warnings().clamped_observations;
      const std::size_t w = nbrs.size();
      const std::size_t k0 = (kz + w * c) & (n - 1);
      for (std::size_t t = 0; t < w; ++t) {
        for (std::size_t k = 0; k < n; ++k) {
          sre[k] = nre[k];
          sim[k] = nim[k];
        }
        for (std::size_t u = 0; u < w; ++u) {
          if (u == t) continue;
          const double* ar = are.data() + nbrs[u].edge * n;
          const double* ai = aim.data() + nbrs[u].edge * n;
          // a mirror in index space is a conjugate in the spectral domain
          if (nbrs[u].sign > 0) {
            kernels::cmul(sre.data(), sim.data(), ar, ai, sre.data(), sim.data(), n);
          } else {
            kernels::cmul_conj(sre.data(), sim.data(), ar, ai, sre.data(), sim.data(), n);
          }
        }
        plan.inverse(sre.data(), sim.data());
        // read out as a function of x_i: reverse through the observation bin,
        // mirrored again when the outgoing edge sign is negative
        if (nbrs[t].sign > 0) {
          for (std::size_t k = 0; k < n; ++k) {
            const double v = sre[(k0 - k) & (n - 1)];
            cand[k] = v < 0.0 ? 0.0 : v;
          }
        } else {
          for (std::size_t k = 0; k < n; ++k) {
            const double v = sre[(k0 + k) & (n - 1)];
            cand[k] = v < 0.0 ? 0.0 : v;
          }
        }
        normalize_or_repair(cand.data(), uniform.data(), n,
                            msgs.warnings().degenerate_products);
        auto out = msgs.b(nbrs[t].edge);
        if (damping > 0.0) {
          kernels::mix(cand.data(), out.data(), damping, out.data(), n);
        } else {
          for (std::size_t k = 0; k < n; ++k) out[k] = cand[k];
        }
      }
    }
    return;
  }

  // direct_linear: explicit convolution pipeline, boundary mass accumulates
  std::vector<double> adj_buf, gbuf(n), tmp(n), mg(n), delta(n, 0.0);
  for (std::size_t j = 0; j < g.n_rows(); ++j) {
    const auto nbrs = g.row_neighbors(j);
    if (nbrs.empty()) continue;
    bool in_range = true;
    const std::size_t kz = msgs.grid().nearest_index(z[j], &in_range);
    if (!in_range) ++msgs.warnings().clamped_observations;
    const std::size_t w = nbrs.size();
    adj_buf.resize(w * n);
    for (std::size_t u = 0; u < w; ++u) {
      const auto am = msgs.a(nbrs[u].edge);
      double* dst = adj_buf.data() + u * n;
      if (nbrs[u].sign > 0) {
        for (std::size_t k = 0; k < n; ++k) dst[k] = am[k];
      } else {
        dst[0] = am[0];
        for (std::size_t k = 1; k < n; ++k) dst[k] = am[n - k];
      }
    }
    for (std::size_t t = 0; t < w; ++t) {
      const double* noise = noise_pmf.mass().data();
      for (std::size_t k = 0; k < n; ++k) gbuf[k] = noise[k];
      for (std::size_t u = 0; u < w; ++u) {
        if (u == t) continue;
        kernels::conv_clamped(gbuf.data(), adj_buf.data() + u * n, tmp.data(), n, c);
        gbuf.swap(tmp);
      }
      // function of x_i: mirror the rest density, then shift by the snapped z
      mg[0] = gbuf[0];
      for (std::size_t k = 1; k < n; ++k) mg[k] = gbuf[n - k];
      delta[kz] = 1.0;
      kernels::conv_clamped(delta.data(), mg.data(), cand.data(), n, c);
      delta[kz] = 0.0;
      if (nbrs[t].sign < 0) {
        tmp[0] = cand[0];
        for (std::size_t k = 1; k < n; ++k) tmp[k] = cand[n - k];
        cand.swap(tmp);
      }
      normalize_or_repair(cand.data(), uniform.data(), n, msgs.warnings().degenerate_products);
      auto out = msgs.b(nbrs[t].edge);
      if (damping > 0.0) {
        kernels::mix(cand.data(), out.data(), damping, out.data(), n);
      } else {
        for (std::size_t k = 0; k < n; ++k) out[k] = cand[k];
      }
    }
  }
}

void compute_posteriors(const SensingGraph& g, const DiscreteDensity& prior_pmf,
                        MessageSet& msgs) {
  check_grid(msgs, prior_pmf, "prior");
  const std::size_t n = msgs.n_d();
  const double* prior = prior_pmf.mass().data();
  for (std::size_t i = 0; i < g.n_cols(); ++i) {
    auto post = msgs.posterior(i);
    for (std::size_t k = 0; k < n; ++k) post[k] = prior[k];
    for (const Adj& nb : g.col_neighbors(i)) {
      kernels::mul(post.data(), msgs.b(nb.edge).data(), post.data(), n);
    }
    normalize_or_repair(post.data(), prior, n, msgs.warnings().degenerate_products);
  }
}

void run_iteration(const SensingGraph& g, std::span<const double> z,
                   const DiscreteDensity& prior_pmf, const DiscreteDensity& noise_pmf,
                   MessageSet& msgs, const BpConfig& cfg) {
  update_signal_messages(g, prior_pmf, msgs, cfg.damping);
  update_measurement_messages(g, z, noise_pmf, msgs, cfg.mode, cfg.damping);
  compute_posteriors(g, prior_pmf, msgs);
}

}  // namespace csbsd::bp
