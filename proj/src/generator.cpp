#include "blockrec/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace blockrec {

namespace {

std::vector<std::int64_t> cluster_labels(std::size_t length, std::size_t cluster_size,
                                         bool permute, RandomStream& rng) {
  std::vector<std::int64_t> labels(length);
  for (std::size_t i = 0; i < length; ++i) {
    labels[i] = static_cast<std::int64_t>(i / cluster_size);
  }
  if (permute) {
    for (std::size_t i = length; i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.below(i));
      std::swap(labels[i - 1], labels[j]);
    }
  }
  return labels;
}

// Ids assigned to equal keys, in order of first occurrence.
std::vector<std::int64_t> merge_equal(const std::vector<std::vector<Bit>>& keys) {
  std::map<std::vector<Bit>, std::int64_t> seen;
  std::vector<std::int64_t> merged;
  merged.reserve(keys.size());
  for (const auto& key : keys) {
    const auto [it, inserted] = seen.try_emplace(key, static_cast<std::int64_t>(seen.size()));
    merged.push_back(it->second);
  }
  return merged;
}

Partition coarsen(const Partition& fine, const std::vector<std::int64_t>& merged) {
  std::vector<std::int64_t> labels(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) labels[i] = merged[fine.label(i)];
  return Partition::from_labels(labels);
}

}  // namespace

BlockConstantMatrix sample_block_matrix(const GenerationLaw& law, RandomStream& rng) {
  law.validate();
  const std::size_t r = law.row_clusters();
  const std::size_t t = law.col_clusters();
  std::vector<std::vector<Bit>> table(r, std::vector<Bit>(t));
  for (auto& row : table) {
    for (auto& value : row) value = rng.fair_bit();
  }
  const auto row_labels = cluster_labels(law.m, law.m0, law.permute, rng);
  const auto col_labels = cluster_labels(law.n, law.n0, law.permute, rng);
  return BlockConstantMatrix::from_raw_labels(row_labels, col_labels, table);
}

EffectivePartition effective_partition(const BlockConstantMatrix& x) {
  const std::size_t r = x.row_partition().cluster_count();
  const std::size_t t = x.col_partition().cluster_count();
  std::vector<std::vector<Bit>> block_rows(r, std::vector<Bit>(t));
  std::vector<std::vector<Bit>> block_cols(t, std::vector<Bit>(r));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      block_rows[a][b] = block_cols[b][a] = x.block_value(a, b);
    }
  }
  return {coarsen(x.row_partition(), merge_equal(block_rows)),
          coarsen(x.col_partition(), merge_equal(block_cols))};
}

bool degenerate_event_T(const BlockConstantMatrix& x) {
  const auto effective = effective_partition(x);
  return effective.rows.cluster_count() < x.row_partition().cluster_count() ||
         effective.cols.cluster_count() < x.col_partition().cluster_count();
}

namespace {

double pairs(std::size_t k) {
  const auto d = static_cast<double>(k);
  return d * (d - 1.0) / 2.0;
}

}  // namespace

double prob_T_union_bound(std::size_t r, std::size_t t) {
  const double bound = std::ldexp(pairs(r), -static_cast<int>(std::min<std::size_t>(t, 4096))) +
                       std::ldexp(pairs(t), -static_cast<int>(std::min<std::size_t>(r, 4096)));
  return std::min(1.0, bound);
}

double prob_T_union_bound_loose(std::size_t m, std::size_t n, std::size_t r, std::size_t t) {
  const auto dm = static_cast<double>(m);
  const auto dn = static_cast<double>(n);
  const double bound = std::ldexp(dm * dm, -static_cast<int>(std::min<std::size_t>(t, 4096))) +
                       std::ldexp(dn * dn, -static_cast<int>(std::min<std::size_t>(r, 4096)));
  return std::min(1.0, bound);
}

}  // namespace blockrec
