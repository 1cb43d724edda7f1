#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "blockrec/model.hpp"

namespace blockrec {

enum class Axis { Rows, Columns };

struct PairwiseDecision {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
  bool same_cluster = false;  // distance < d0
};

// Fraction of the full line length (n for rows, m for columns) at which both
// lines are observed and disagree. Throws std::out_of_range on a bad index and
// std::invalid_argument when i == j.
double pairwise_distance(const ObservedMatrix& y, std::size_t i, std::size_t j, Axis axis);

PairwiseDecision decide_pair(const ObservedMatrix& y, std::size_t i, std::size_t j, double d0,
                             Axis axis);

// Connected components of the graph with an edge per same_cluster decision.
Partition partition_from_decisions(std::size_t length, std::span<const PairwiseDecision> decisions);

// Thresholds every pair along `axis` at d0 and returns the connected
// components as a canonical partition.
Partition cluster_axis(const ObservedMatrix& y, double d0, Axis axis);

struct AuditedClustering {
  Partition partition;
  std::uint64_t decision_errors = 0;  // pairs whose decision disagrees with the truth
};

// cluster_axis plus a count of wrong pairwise decisions against `truth`.
AuditedClustering cluster_axis_audited(const ObservedMatrix& y, double d0, Axis axis,
                                       const Partition& truth);

// Identical up to relabeling. Throws std::invalid_argument on a length mismatch.
bool partition_match(const Partition& estimated, const Partition& truth);

// Pairs i < j whose same/different status differs between the partitions.
std::uint64_t pairwise_error_count(const Partition& estimated, const Partition& truth);

struct ClusterPipelineResult {
  Partition rows;
  Partition cols;
};

// Rows and columns clustered independently at d0 = mu + delta/3.
ClusterPipelineResult cluster_pipeline(const ObservedMatrix& y, const ChannelParams& ch);

}  // namespace blockrec
