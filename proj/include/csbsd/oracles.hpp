#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csbsd/density.hpp"
#include "csbsd/model.hpp"
#include "csbsd/sensing.hpp"

// Slow, structurally independent reference routes used only by tests. Nothing
// here shares code with the message-passing engine beyond the grid type.
namespace csbsd::oracles {

// Exact single-site marginals of the circularly discretized joint
//   p(k_1..k_N) ∝ prod_i prior[k_i] * prod_j noise[(kz_j - sum_u s_u (k_u - c)) mod n]
// by full enumeration over all grid^N configurations. Observations snap to the
// grid with the same nearest-index rule the engine uses. Cost n_d^N; keep N tiny.
std::vector<density::DiscreteDensity> exact_posteriors(const sensing::SensingGraph& g,
                                                       std::span<const double> z,
                                                       const model::PriorParams& prior,
                                                       const density::GridPtr& grid);

// Random bipartite forest: every column touches 1 or 2 rows, no cycles
// (degree-2 columns are edges in a union-find over rows). Signs equiprobable.
sensing::SensingGraph random_forest_graph(std::size_t n_cols, std::size_t n_rows,
                                          std::uint64_t seed);

// Longest shortest path over the bipartite node set (columns + rows), in edges.
// Disconnected parts contribute their own eccentricities. 0 for edgeless graphs.
std::size_t graph_diameter(const sensing::SensingGraph& g);

// Row-major dense copy of the sensing operator, n_rows x n_cols.
std::vector<double> dense_matrix(const sensing::SensingGraph& g);

}  // namespace csbsd::oracles
