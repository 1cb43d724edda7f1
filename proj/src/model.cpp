#include "blockrec/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace blockrec {

void ChannelParams::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("erasure probability must lie in [0, 1], got " +
                                std::to_string(epsilon));
  }
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("crossover probability must lie in [0, 1/2], got " +
                                std::to_string(p));
  }
}

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
  if (labels.empty()) {
    throw std::invalid_argument("a partition needs at least one index");
  }
  std::unordered_map<std::int64_t, std::uint32_t> remap;
  std::vector<std::uint32_t> canonical;
  std::vector<std::size_t> sizes;
  canonical.reserve(labels.size());
  for (const auto raw : labels) {
    if (raw < 0) {
      throw std::invalid_argument("cluster labels must be nonnegative, got " +
                                  std::to_string(raw));
    }
    const auto [it, inserted] = remap.try_emplace(raw, static_cast<std::uint32_t>(sizes.size()));
    if (inserted) sizes.push_back(0);
    ++sizes[it->second];
    canonical.push_back(it->second);
  }
  return Partition(std::move(canonical), std::move(sizes));
}

Partition validate_partition(std::span<const std::int64_t> labels) {
  return Partition::from_labels(labels);
}

Partition validate_partition(std::initializer_list<std::int64_t> labels) {
  return Partition::from_labels(std::span(labels.begin(), labels.size()));
}

BlockConstantMatrix::BlockConstantMatrix(Partition rows, Partition cols,
                                         std::vector<Bit> block_values)
    : rows_(std::move(rows)), cols_(std::move(cols)), values_(std::move(block_values)) {
  if (values_.size() != rows_.cluster_count() * cols_.cluster_count()) {
    throw std::invalid_argument("block table size does not match the cluster counts");
  }
  if (std::any_of(values_.begin(), values_.end(), [](Bit b) { return b > 1; })) {
    throw std::invalid_argument("block values must be 0 or 1");
  }
}

namespace {

// For each canonical id, the raw label that introduced it.
std::vector<std::int64_t> first_raw_labels(std::span<const std::int64_t> raw,
                                           const Partition& canonical) {
  std::vector<std::int64_t> origin(canonical.cluster_count(), -1);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& slot = origin[canonical.label(i)];
    if (slot < 0) slot = raw[i];
  }
  return origin;
}

}  // namespace

BlockConstantMatrix BlockConstantMatrix::from_raw_labels(
    std::span<const std::int64_t> row_labels, std::span<const std::int64_t> col_labels,
    const std::vector<std::vector<Bit>>& table) {
  auto rows = Partition::from_labels(row_labels);
  auto cols = Partition::from_labels(col_labels);
  const std::size_t table_rows = table.size();
  const std::size_t table_cols = table.empty() ? 0 : table.front().size();
  for (const auto& row : table) {
    if (row.size() != table_cols) throw std::invalid_argument("block table is not rectangular");
  }
  const auto in_range = [](std::span<const std::int64_t> labels, std::size_t bound) {
    return std::all_of(labels.begin(), labels.end(), [bound](std::int64_t l) {
      return static_cast<std::size_t>(l) < bound;
    });
  };
  if (!in_range(row_labels, table_rows) || rows.cluster_count() != table_rows) {
    throw std::invalid_argument("row labels must use every block-table row and no other");
  }
  if (!in_range(col_labels, table_cols) || cols.cluster_count() != table_cols) {
    throw std::invalid_argument("column labels must use every block-table column and no other");
  }

  const auto row_origin = first_raw_labels(row_labels, rows);
  const auto col_origin = first_raw_labels(col_labels, cols);
  std::vector<Bit> values(table_rows * table_cols);
  for (std::size_t a = 0; a < table_rows; ++a) {
    for (std::size_t b = 0; b < table_cols; ++b) {
      values[a * table_cols + b] = table[row_origin[a]][col_origin[b]];
    }
  }
  return BlockConstantMatrix(std::move(rows), std::move(cols), std::move(values));
}

Bit entry_at(const BlockConstantMatrix& x, std::size_t i, std::size_t k) {
  if (i >= x.rows() || k >= x.cols()) {
    throw std::out_of_range("entry (" + std::to_string(i) + ", " + std::to_string(k) +
                            ") outside a " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + " matrix");
  }
  return x.entry(i, k);
}

ObservedMatrix::ObservedMatrix(std::size_t m, std::size_t n)
    : ObservedMatrix(m, n, std::vector<Symbol>(m * n, Symbol::Erased)) {}

ObservedMatrix::ObservedMatrix(std::size_t m, std::size_t n, std::vector<Symbol> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
  if (m == 0 || n == 0) throw std::invalid_argument("matrix dimensions must be positive");
  if (entries_.size() != m * n) {
    throw std::invalid_argument("entry count does not match the matrix dimensions");
  }
}

Symbol ObservedMatrix::at(std::size_t i, std::size_t k) const {
  if (i >= m_ || k >= n_) throw std::out_of_range("observed entry index out of range");
  return (*this)(i, k);
}

bool ObservedMatrix::has_erasures() const {
  return std::find(entries_.begin(), entries_.end(), Symbol::Erased) != entries_.end();
}

ObservedMatrix to_observed(const BlockConstantMatrix& x) {
  ObservedMatrix y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < x.cols(); ++k) y(i, k) = static_cast<Symbol>(x.entry(i, k));
  }
  return y;
}

void GenerationLaw::validate() const {
  if (m == 0 || n == 0 || m0 == 0 || n0 == 0) {
    throw std::invalid_argument("matrix and cluster dimensions must be positive");
  }
  if (m % m0 != 0) {
    throw std::invalid_argument("row cluster size " + std::to_string(m0) +
                                " does not divide m = " + std::to_string(m));
  }
  if (n % n0 != 0) {
    throw std::invalid_argument("column cluster size " + std::to_string(n0) +
                                " does not divide n = " + std::to_string(n));
  }
}

}  // namespace blockrec
