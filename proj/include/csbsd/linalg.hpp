#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace csbsd::linalg {

// Small dense helpers for support-sized systems (row-major k x k storage).

// In-place Cholesky A = L L^T keeping the lower triangle; returns false on a
// non-positive pivot (matrix not SPD to working precision).
bool cholesky_factor(std::span<double> a, std::size_t k);

// Solve L L^T x = b given a factored matrix; b is overwritten with x.
void cholesky_solve(std::span<const double> chol, std::size_t k, std::span<double> b);

// Tr(A^{-1}) from the Cholesky factor, by back-solving unit vectors.
double inverse_trace(std::span<const double> chol, std::size_t k);

// Gauss-Jordan inverse with partial pivoting; independent route used by the
// dense test oracle. Throws std::domain_error on a singular matrix.
std::vector<double> invert_dense(std::vector<double> a, std::size_t k);

}  // namespace csbsd::linalg
