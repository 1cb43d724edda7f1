#pragma once

#include <cstddef>

#include "blockrec/model.hpp"
#include "blockrec/random.hpp"

namespace blockrec {

// Draw order: the r x t block values row-major, then (if law.permute) a
// Fisher-Yates shuffle of the row labels, then of the column labels.
BlockConstantMatrix sample_block_matrix(const GenerationLaw& law, RandomStream& rng);

struct EffectivePartition {
  Partition rows;
  Partition cols;
};

// Coarsest partitions under which x is still block constant: row clusters
// with identical block rows are merged, likewise for columns.
EffectivePartition effective_partition(const BlockConstantMatrix& x);

// True when two row clusters (or two column clusters) carry identical block
// values, so the largest effective cluster exceeds the generated size.
bool degenerate_event_T(const BlockConstantMatrix& x);

// C(r,2) 2^-t + C(t,2) 2^-r, capped at 1.
double prob_T_union_bound(std::size_t r, std::size_t t);

// m^2 2^-t + n^2 2^-r, capped at 1.
double prob_T_union_bound_loose(std::size_t m, std::size_t n, std::size_t r, std::size_t t);

}  // namespace blockrec
