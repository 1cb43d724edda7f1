#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace blockrec {

using Bit = std::uint8_t;

// Erasure channel followed by a binary symmetric channel.
struct ChannelParams {
  double epsilon = 0.0;  // erasure probability
  double p = 0.0;        // crossover probability, at most 1/2

  // Throws std::invalid_argument unless 0 <= epsilon <= 1 and 0 <= p <= 1/2.
  void validate() const;
};

enum class TiePolicy {
  FairCoin,      // a tied cluster is resolved by a fair bit
  CountAsError,  // a tied cluster is always counted as a decoding error
};

enum class Symbol : std::uint8_t { Zero = 0, One = 1, Erased = 2 };

// Assignment of indices to clusters, stored as canonical labels: cluster ids
// appear in order of first occurrence, so two partitions describe the same
// grouping exactly when their label arrays compare equal.
class Partition {
 public:
  static Partition from_labels(std::span<const std::int64_t> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t cluster_count() const { return sizes_.size(); }
  std::uint32_t label(std::size_t index) const { return labels_[index]; }
  std::span<const std::uint32_t> labels() const { return labels_; }
  std::span<const std::size_t> sizes() const { return sizes_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  Partition(std::vector<std::uint32_t> labels, std::vector<std::size_t> sizes)
      : labels_(std::move(labels)), sizes_(std::move(sizes)) {}

  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> sizes_;
};

// Canonicalizes arbitrary nonnegative labels. Throws std::invalid_argument on
// empty input or a negative label.
Partition validate_partition(std::span<const std::int64_t> labels);
Partition validate_partition(std::initializer_list<std::int64_t> labels);

// Binary matrix that is constant on every cluster (row cluster x column
// cluster). Values are held once per block in row-major cluster order.
class BlockConstantMatrix {
 public:
  // block_values holds row_partition.cluster_count() x col_partition.cluster_count()
  // bits indexed by canonical cluster ids.
  BlockConstantMatrix(Partition rows, Partition cols, std::vector<Bit> block_values);

  // Builds from raw (non-canonical) labels with a table indexed by those raw
  // labels. Every raw label must index the table and every table row/column
  // must be used. The table is reordered to match the canonical labels, so
  // entries are preserved.
  static BlockConstantMatrix from_raw_labels(std::span<const std::int64_t> row_labels,
                                             std::span<const std::int64_t> col_labels,
                                             const std::vector<std::vector<Bit>>& table);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_.size(); }
  const Partition& row_partition() const { return rows_; }
  const Partition& col_partition() const { return cols_; }
  std::span<const Bit> block_values() const { return values_; }

  Bit block_value(std::size_t row_cluster, std::size_t col_cluster) const {
    return values_[row_cluster * cols_.cluster_count() + col_cluster];
  }

  // Unchecked entry access.
  Bit entry(std::size_t i, std::size_t k) const {
    return values_[rows_.label(i) * cols_.cluster_count() + cols_.label(k)];
  }

 private:
  Partition rows_;
  Partition cols_;
  std::vector<Bit> values_;
};

// Bounds-checked entry access; throws std::out_of_range.
Bit entry_at(const BlockConstantMatrix& x, std::size_t i, std::size_t k);

// m x n matrix over {0, 1, e}, row-major.
class ObservedMatrix {
 public:
  // All entries start Erased.
  ObservedMatrix(std::size_t m, std::size_t n);
  ObservedMatrix(std::size_t m, std::size_t n, std::vector<Symbol> entries);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::span<const Symbol> entries() const { return entries_; }

  Symbol operator()(std::size_t i, std::size_t k) const { return entries_[i * n_ + k]; }
  Symbol& operator()(std::size_t i, std::size_t k) { return entries_[i * n_ + k]; }
  Symbol at(std::size_t i, std::size_t k) const;

  bool has_erasures() const;

  friend bool operator==(const ObservedMatrix&, const ObservedMatrix&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Symbol> entries_;
};

ObservedMatrix to_observed(const BlockConstantMatrix& x);

// Equal-size cluster law: r = m / m0 row clusters, t = n / n0 column clusters,
// i.i.d. fair block values, optional random assignment of indices to clusters.
struct GenerationLaw {
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t m0 = 1;
  std::size_t n0 = 1;
  bool permute = true;

  // Throws std::invalid_argument on zero sizes or when m0 does not divide m
  // (or n0 does not divide n).
  void validate() const;
  std::size_t row_clusters() const { return m / m0; }
  std::size_t col_clusters() const { return n / n0; }
  std::size_t cluster_size() const { return m0 * n0; }
};

}  // namespace blockrec
