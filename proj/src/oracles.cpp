#include "csbsd/oracles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

namespace csbsd::oracles {
namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

std::vector<density::DiscreteDensity> exact_posteriors(const sensing::SensingGraph& g,
                                                       std::span<const double> z,
                                                       const model::PriorParams& prior,
                                                       const density::GridPtr& grid) {
  const std::size_t n_sig = g.n_cols();
  const std::size_t n_meas = g.n_rows();
  if (z.size() != n_meas) throw std::invalid_argument("observation length mismatch");
  const std::size_t nd = grid->size();
  if (n_sig == 0 || n_sig > 8) throw std::invalid_argument("enumeration wants 1..8 columns");

  const auto prior_pmf = density::spike_slab_prior(grid, prior.q, prior.sigma_x);
  density::DiscreteDensity noise_pmf = prior.sigma_n > 0.0
                                           ? density::gaussian(grid, 0.0, prior.sigma_n)
                                           : density::delta_at(grid, 0.0);

  std::vector<std::size_t> kz(n_meas);
  for (std::size_t j = 0; j < n_meas; ++j) kz[j] = grid->wrapped_index(z[j]);

  const std::size_t half = nd / 2;
  std::vector<std::vector<double>> marg(n_sig, std::vector<double>(nd, 0.0));
  std::vector<std::size_t> k(n_sig, 0);
  double total = 0.0;

  for (;;) {
    double w = 1.0;
    for (std::size_t i = 0; i < n_sig; ++i) w *= prior_pmf.mass()[k[i]];
    if (w > 0.0) {
      for (std::size_t j = 0; j < n_meas && w > 0.0; ++j) {
        std::ptrdiff_t acc = static_cast<std::ptrdiff_t>(kz[j]);
        for (const auto& nb : g.row_neighbors(j)) {
          const auto off = static_cast<std::ptrdiff_t>(k[nb.index]) -
                           static_cast<std::ptrdiff_t>(half);
          acc -= nb.sign > 0 ? off : -off;
        }
        acc %= static_cast<std::ptrdiff_t>(nd);
        if (acc < 0) acc += static_cast<std::ptrdiff_t>(nd);
        w *= noise_pmf.mass()[static_cast<std::size_t>(acc)];
      }
    }
    if (w > 0.0) {
      total += w;
      for (std::size_t i = 0; i < n_sig; ++i) marg[i][k[i]] += w;
    }
    std::size_t pos = 0;
    while (pos < n_sig && ++k[pos] == nd) {
      k[pos] = 0;
      ++pos;
    }
    if (pos == n_sig) break;
  }
  if (!(total > 0.0)) throw std::runtime_error("joint has zero total mass");

  std::vector<density::DiscreteDensity> out;
  out.reserve(n_sig);
  for (std::size_t i = 0; i < n_sig; ++i) {
    for (double& x : marg[i]) x /= total;
    out.emplace_back(grid, std::move(marg[i]));
  }
  return out;
}

sensing::SensingGraph random_forest_graph(std::size_t n_cols, std::size_t n_rows,
                                          std::uint64_t seed) {
  if (n_rows == 0 || n_cols == 0) throw std::invalid_argument("empty graph dimensions");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> row_pick(0, n_rows - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  UnionFind uf(n_rows);

  std::vector<sensing::Entry> entries;
  for (std::size_t i = 0; i < n_cols; ++i) {
    std::size_t deg = n_rows >= 2 && coin(rng) ? 2 : 1;
    std::size_t r1 = row_pick(rng), r2 = r1;
    if (deg == 2) {
      bool ok = false;
      for (int attempt = 0; attempt < 32; ++attempt) {
        r2 = row_pick(rng);
        if (r2 != r1 && uf.find(r1) != uf.find(r2)) {
          ok = true;
          break;
        }
      }
      if (!ok) deg = 1;  // forest is full around r1; fall back to a leaf column
    }
    entries.push_back({static_cast<std::uint32_t>(r1), static_cast<std::uint32_t>(i),
                       static_cast<std::int8_t>(coin(rng) ? 1 : -1)});
    if (deg == 2) {
      uf.unite(r1, r2);
      entries.push_back({static_cast<std::uint32_t>(r2), static_cast<std::uint32_t>(i),
                         static_cast<std::int8_t>(coin(rng) ? 1 : -1)});
    }
  }
  return sensing::SensingGraph(n_cols, n_rows, std::move(entries));
}

std::size_t graph_diameter(const sensing::SensingGraph& g) {
  const std::size_t nc = g.n_cols(), nr = g.n_rows();
  const std::size_t nodes = nc + nr;  // columns first, then rows
  std::size_t best = 0;
  std::vector<std::ptrdiff_t> dist(nodes);
  for (std::size_t start = 0; start < nodes; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<std::size_t> q{start};
    dist[start] = 0;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      auto visit = [&](std::size_t v) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
      };
      if (u < nc) {
        for (const auto& nb : g.col_neighbors(u)) visit(nc + nb.index);
      } else {
        for (const auto& nb : g.row_neighbors(u - nc)) visit(nb.index);
      }
    }
    for (std::size_t v = 0; v < nodes; ++v)
      if (dist[v] > 0) best = std::max(best, static_cast<std::size_t>(dist[v]));
  }
  return best;
}

std::vector<double> dense_matrix(const sensing::SensingGraph& g) {
  std::vector<double> a(g.n_rows() * g.n_cols(), 0.0);
  for (const auto& e : g.entries())
    a[static_cast<std::size_t>(e.row) * g.n_cols() + e.col] = e.sign;
  return a;
}

}  // namespace csbsd::oracles
