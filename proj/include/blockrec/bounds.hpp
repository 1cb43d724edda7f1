#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "blockrec/model.hpp"

namespace blockrec {

// Number of clusters N(s) holding exactly s entries.
class ClusterSizeHistogram {
 public:
  ClusterSizeHistogram() = default;

  static ClusterSizeHistogram from_sizes(std::span<const std::uint64_t> sizes);
  // Clusters A_i x B_j of a row/column partition pair.
  static ClusterSizeHistogram from_partitions(const Partition& rows, const Partition& cols);
  static ClusterSizeHistogram equal_clusters(std::uint64_t cluster_count, std::uint64_t size);

  void add(std::uint64_t size, std::uint64_t count = 1);

  const std::map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }
  std::uint64_t s_min() const;
  std::uint64_t s_max() const;
  std::uint64_t cluster_count() const;
  std::uint64_t total_entries() const;

 private:
  std::map<std::uint64_t, std::uint64_t> counts_;
};

struct BoundValue {
  double value = 0.0;
  bool valid = false;
};

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  bool upper_valid = true;  // hypothesis of the upper bound holds
};

double p1(const ChannelParams& ch);

// G(u) = 1 - prod_s (1 - u^s)^N(s).
double G(double u, const ClusterSizeHistogram& sizes);

// (G(epsilon), G(p1)).
BoundPair theorem1_bounds(const ClusterSizeHistogram& sizes, const ChannelParams& ch);

// Minimum smallest-cluster size ln 2 / ln(1/p1) the upper bounds below need;
// nullopt when p1 = 1.
std::optional<double> corollary1_size_requirement(const ChannelParams& ch);

// 1 - exp(-sum N(s) eps^s) and 1 - exp(-2 ln2 sum N(s) p1^s).
BoundPair corollary1_bounds(const ClusterSizeHistogram& sizes, const ChannelParams& ch);

// 1 - exp(-mn eps^s_max / s_max) and 1 - exp(-2 ln2 mn p1^s_min / s_min).
BoundPair corollary1_simple_bounds(std::uint64_t s_min, std::uint64_t s_max, std::uint64_t m,
                                   std::uint64_t n, const ChannelParams& ch);

struct SizeThresholds {
  std::optional<double> decodable_min_size;    // ln(mn) / ln(1/p1)
  std::optional<double> undecodable_max_size;  // (1 - delta) ln(mn) / ln(1/eps)
};

// Throws std::invalid_argument unless 0 < delta < 1. A threshold is nullopt
// when its channel quantity sits at 0 or 1.
SizeThresholds corollary2_thresholds(std::uint64_t m, std::uint64_t n, const ChannelParams& ch,
                                     double delta);

// Row-distance statistics of the clustering step.
struct Separation {
  double mu = 0.0;     // expected distance, same cluster: 2p(1-p)(1-eps)^2
  double delta = 0.0;  // separation per disagreeing column: (1-eps)^2 (1-2p)^2
  double d0 = 0.0;     // threshold mu + delta/3
};

Separation mu_delta_d0(const ChannelParams& ch);

// Mean of the per-column distance indicator where two rows truly disagree:
// (1-eps)^2 (p^2 + (1-p)^2).
double cross_cluster_disagreement_mean(const ChannelParams& ch);

// exp(-delta^2 alpha^2 / (mu n)), alpha defaulting to n/3.
double same_cluster_error_bound(std::uint64_t n, const ChannelParams& ch,
                                std::optional<double> alpha = std::nullopt);

// exp(-delta^2 (s_ij - alpha)^2 / (6 (n mu + delta alpha))) for s_ij >= alpha,
// else 1; alpha defaults to n/3.
double diff_cluster_error_bound(std::uint64_t n, double s_ij, const ChannelParams& ch,
                                std::optional<double> alpha = std::nullopt);

// min(1, 2 exp(-t/54)).
double t1_bound(std::uint64_t column_clusters);

// In bits, h(0) = h(1) = 0.
double binary_entropy(double x);

// C sqrt(mn ln m ln n), the cluster size needed for a fixed matrix.
double fixed_matrix_cluster_threshold(std::uint64_t m, std::uint64_t n, double C);

struct BoundsReport {
  BoundValue p1;
  BoundValue G_eps;
  BoundValue G_p1;
  BoundValue cor1_lower;
  BoundValue cor1_upper;
  BoundValue cor1_simple_lower;
  BoundValue cor1_simple_upper;
  BoundValue cor2_lower_threshold;  // decodable minimum cluster size
  BoundValue cor2_upper_threshold;  // undecodable maximum cluster size
};

BoundsReport make_bounds_report(const ClusterSizeHistogram& sizes, const ChannelParams& ch,
                                std::uint64_t m, std::uint64_t n, double delta);

}  // namespace blockrec
