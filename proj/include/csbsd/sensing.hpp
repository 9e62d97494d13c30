#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace csbsd::sensing {

// One nonzero of the sparse sensing operator: row j, column i, sign in {-1,+1}.
struct Entry {
  std::uint32_t row;
  std::uint32_t col;
  std::int8_t sign;
};

// Neighbor record in an adjacency list; `edge` indexes the canonical
// row-major entry order shared by every message array.
struct Adj {
  std::uint32_t index;  // column for row lists, row for column lists
  std::int8_t sign;
  std::uint32_t edge;
};

// Sparse {0,+1,-1} sensing operator held as a bipartite adjacency structure.
// Entries are canonicalized to (row, col) order at construction, so equal edge
// sets always produce identical structures regardless of input order.
class SensingGraph {
 public:
  // Columns draw `l` distinct rows uniformly without replacement, signs
  // equiprobable. Deterministic for a fixed seed.
  static SensingGraph generate(std::size_t n_cols, std::size_t n_rows, std::size_t l,
                               std::uint64_t seed);

  SensingGraph(std::size_t n_cols, std::size_t n_rows, std::vector<Entry> entries,
               std::uint64_t seed = 0);

  std::size_t n_cols() const { return n_cols_; }
  std::size_t n_rows() const { return n_rows_; }
  // Uniform column weight; 0 when columns are non-uniform (hand-built graphs).
  std::size_t col_weight() const { return l_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t n_edges() const { return entries_.size(); }

  const std::vector<Entry>& entries() const { return entries_; }
  std::span<const Adj> row_neighbors(std::size_t j) const;  // columns, ascending
  std::span<const Adj> col_neighbors(std::size_t i) const;  // rows, ascending

  // out = Phi * x; accumulation runs in canonical entry order.
  void matvec(std::span<const double> x, std::span<double> out) const;

  // ||Phi x - z||_2
  double residual_norm(std::span<const double> x, std::span<const double> z) const;

  // Text form: header "n m l seed", then one "j i sign" line per entry in
  // canonical order. Round-trips bit-exactly.
  void write_text(std::ostream& os) const;
  static SensingGraph read_text(std::istream& is);

 private:
  std::size_t n_cols_ = 0, n_rows_ = 0, l_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Entry> entries_;            // sorted by (row, col)
  std::vector<Adj> row_adj_, col_adj_;    // flattened adjacency
  std::vector<std::uint32_t> row_off_, col_off_;
  void build_adjacency();
};

// Column subselection B(G, s): keeps every row, keeps columns with s[i] = 1.
// `support` is the bijection from packed column index to original column.
struct Submatrix {
  SensingGraph graph;
  std::vector<std::size_t> support;
};

// Throws std::invalid_argument when the support is empty.
Submatrix submatrix_on_support(const SensingGraph& g, std::span<const std::uint8_t> states);

}  // namespace csbsd::sensing
