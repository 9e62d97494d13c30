#include "csbsd/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace csbsd::sensing {

SensingGraph SensingGraph::generate(std::size_t n_cols, std::size_t n_rows, std::size_t l,
                                    std::uint64_t seed) {
  if (n_cols == 0 || n_rows == 0) throw std::invalid_argument("generate: empty dimensions");
  if (l < 1 || l > n_rows) throw std::invalid_argument("generate: need 1 <= l <= n_rows");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coin(0, 1);
  std::vector<Entry> entries;
  entries.reserve(n_cols * l);
  std::set<std::uint32_t> rows;
  for (std::size_t i = 0; i < n_cols; ++i) {
    rows.clear();
    // Floyd's sampling: l distinct rows, uniform without replacement
    for (std::size_t j = n_rows - l; j < n_rows; ++j) {
      std::uniform_int_distribution<std::size_t> pick(0, j);
      const std::size_t t = pick(rng);
      if (!rows.insert(static_cast<std::uint32_t>(t)).second) {
        rows.insert(static_cast<std::uint32_t>(j));
      }
    }
    for (std::uint32_t r : rows) {  // ascending: sign draws are order-canonical
      const std::int8_t s = coin(rng) ? std::int8_t{1} : std::int8_t{-1};
      entries.push_back(Entry{r, static_cast<std::uint32_t>(i), s});
    }
  }
  SensingGraph g(n_cols, n_rows, std::move(entries), seed);
  g.l_ = l;
  return g;
}

SensingGraph::SensingGraph(std::size_t n_cols, std::size_t n_rows, std::vector<Entry> entries,
                           std::uint64_t seed)
    : n_cols_(n_cols), n_rows_(n_rows), seed_(seed), entries_(std::move(entries)) {
  if (n_cols == 0 || n_rows == 0) throw std::invalid_argument("SensingGraph: empty dimensions");
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const Entry& en = entries_[e];
    if (en.row >= n_rows_ || en.col >= n_cols_) {
      throw std::invalid_argument("SensingGraph: entry out of range");
    }
    if (en.sign != 1 && en.sign != -1) throw std::invalid_argument("SensingGraph: sign must be +-1");
    if (e > 0 && entries_[e - 1].row == en.row && entries_[e - 1].col == en.col) {
      throw std::invalid_argument("SensingGraph: duplicate entry");
    }
  }
  build_adjacency();
  // record the uniform column weight when there is one
  std::vector<std::uint32_t> w(n_cols_, 0);
  for (const Entry& en : entries_) ++w[en.col];
  l_ = n_cols_ ? w[0] : 0;
  for (std::uint32_t wi : w) {
    if (wi != l_) {
      l_ = 0;
      break;
    }
  }
}

void SensingGraph::build_adjacency() {
  row_off_.assign(n_rows_ + 1, 0);
  col_off_.assign(n_cols_ + 1, 0);
  for (const Entry& en : entries_) {
    ++row_off_[en.row + 1];
    ++col_off_[en.col + 1];
  }
  for (std::size_t j = 0; j < n_rows_; ++j) row_off_[j + 1] += row_off_[j];
  for (std::size_t i = 0; i < n_cols_; ++i) col_off_[i + 1] += col_off_[i];
  row_adj_.resize(entries_.size());
  col_adj_.resize(entries_.size());
  std::vector<std::uint32_t> rpos(row_off_.begin(), row_off_.end() - 1);
  std::vector<std::uint32_t> cpos(col_off_.begin(), col_off_.end() - 1);
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const Entry& en = entries_[e];
    row_adj_[rpos[en.row]++] = Adj{en.col, en.sign, static_cast<std::uint32_t>(e)};
    col_adj_[cpos[en.col]++] = Adj{en.row, en.sign, static_cast<std::uint32_t>(e)};
  }
  // entries are (row, col)-sorted: row lists are already column-ascending and
  // column lists row-ascending
}

std::span<const Adj> SensingGraph::row_neighbors(std::size_t j) const {
  return {row_adj_.data() + row_off_[j], row_off_[j + 1] - row_off_[j]};
}

std::span<const Adj> SensingGraph::col_neighbors(std::size_t i) const {
  return {col_adj_.data() + col_off_[i], col_off_[i + 1] - col_off_[i]};
}

void SensingGraph::matvec(std::span<const double> x, std::span<double> out) const {
  if (x.size() != n_cols_ || out.size() != n_rows_) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (const Entry& en : entries_) {
    out[en.row] += en.sign > 0 ? x[en.col] : -x[en.col];
  }
}

double SensingGraph::residual_norm(std::span<const double> x, std::span<const double> z) const {
  if (z.size() != n_rows_) throw std::invalid_argument("residual_norm: z length mismatch");
  std::vector<double> y(n_rows_, 0.0);
  matvec(x, y);
  double s = 0.0;
  for (std::size_t j = 0; j < n_rows_; ++j) {
    const double d = y[j] - z[j];
    s += d * d;
  }
  return std::sqrt(s);
}

void SensingGraph::write_text(std::ostream& os) const {
  os << n_cols_ << ' ' << n_rows_ << ' ' << l_ << ' ' << seed_ << '\n';
  for (const Entry& en : entries_) {
    os << en.row << ' ' << en.col << ' ' << static_cast<int>(en.sign) << '\n';
  }
}

SensingGraph SensingGraph::read_text(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("read_text: missing header");
  std::istringstream hs(header);
  std::size_t n = 0, m = 0, l = 0;
  std::uint64_t seed = 0;
  if (!(hs >> n >> m >> l >> seed)) throw std::runtime_error("read_text: malformed header");
  std::vector<Entry> entries;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint32_t j = 0, i = 0;
    int s = 0;
    if (!(ls >> j >> i >> s)) throw std::runtime_error("read_text: malformed entry line");
    entries.push_back(Entry{j, i, static_cast<std::int8_t>(s)});
  }
  SensingGraph g(n, m, std::move(entries), seed);
  if (l != 0 && g.col_weight() != l) {
    throw std::runtime_error("read_text: header column weight disagrees with entries");
  }
  return g;
}

Submatrix submatrix_on_support(const SensingGraph& g, std::span<const std::uint8_t> states) {
  if (states.size() != g.n_cols()) {
    throw std::invalid_argument("submatrix_on_support: states length mismatch");
  }
  std::vector<std::size_t> support;
  std::vector<std::uint32_t> packed(g.n_cols(), 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i]) {
      packed[i] = static_cast<std::uint32_t>(support.size());
      support.push_back(i);
    }
  }
  if (support.empty()) throw std::invalid_argument("submatrix_on_support: empty support");
  std::vector<Entry> kept;
  for (const Entry& en : g.entries()) {
    if (states[en.col]) kept.push_back(Entry{en.row, packed[en.col], en.sign});
  }
  return Submatrix{SensingGraph(support.size(), g.n_rows(), std::move(kept), g.seed()),
                   std::move(support)};
}

}  // namespace csbsd::sensing
