#include "blockrec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace blockrec {

ClusterSizeHistogram ClusterSizeHistogram::from_sizes(std::span<const std::uint64_t> sizes) {
  ClusterSizeHistogram h;
  for (const auto s : sizes) h.add(s);
  return h;
}

ClusterSizeHistogram ClusterSizeHistogram::from_partitions(const Partition& rows,
                                                           const Partition& cols) {
  ClusterSizeHistogram h;
  for (const auto mi : rows.sizes()) {
    for (const auto nj : cols.sizes()) h.add(static_cast<std::uint64_t>(mi) * nj);
  }
  return h;
}

ClusterSizeHistogram ClusterSizeHistogram::equal_clusters(std::uint64_t cluster_count,
                                                          std::uint64_t size) {
  ClusterSizeHistogram h;
  h.add(size, cluster_count);
  return h;
}

void ClusterSizeHistogram::add(std::uint64_t size, std::uint64_t count) {
  if (size == 0) throw std::invalid_argument("cluster sizes must be positive");
  if (count == 0) return;
  counts_[size] += count;
}

std::uint64_t ClusterSizeHistogram::s_min() const {
  if (counts_.empty()) throw std::logic_error("empty cluster-size histogram");
  return counts_.begin()->first;
}

std::uint64_t ClusterSizeHistogram::s_max() const {
  if (counts_.empty()) throw std::logic_error("empty cluster-size histogram");
  return counts_.rbegin()->first;
}

std::uint64_t ClusterSizeHistogram::cluster_count() const {
  std::uint64_t total = 0;
  for (const auto& [s, count] : counts_) total += count;
  return total;
}

std::uint64_t ClusterSizeHistogram::total_entries() const {
  std::uint64_t total = 0;
  for (const auto& [s, count] : counts_) total += s * count;
  return total;
}

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Adding 0.0 turns -0.0 into +0.0.
double unit(double x) { return std::clamp(x, 0.0, 1.0) + 0.0; }

// sum_s N(s) u^s
double weighted_power_sum(double u, const ClusterSizeHistogram& sizes) {
  double total = 0.0;
  for (const auto& [s, count] : sizes.counts()) {
    total += static_cast<double>(count) * std::pow(u, static_cast<double>(s));
  }
  return total;
}

// 1 - exp(-x) for x >= 0.
double one_minus_exp_neg(double x) { return unit(-std::expm1(-x)); }

bool smallest_cluster_large_enough(double s_min, const ChannelParams& ch) {
  const auto needed = corollary1_size_requirement(ch);
  return needed.has_value() && s_min >= *needed;
}

}  // namespace

double p1(const ChannelParams& ch) {
  ch.validate();
  return unit(ch.epsilon + 2.0 * (1.0 - ch.epsilon) * std::sqrt(ch.p * (1.0 - ch.p)));
}

double G(double u, const ClusterSizeHistogram& sizes) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("G is defined for u in [0, 1]");
  if (sizes.empty() || u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  double log_product = 0.0;
  for (const auto& [s, count] : sizes.counts()) {
    log_product += static_cast<double>(count) * std::log1p(-std::pow(u, static_cast<double>(s)));
  }
  return unit(-std::expm1(log_product));
}

BoundPair theorem1_bounds(const ClusterSizeHistogram& sizes, const ChannelParams& ch) {
  return {G(ch.epsilon, sizes), G(p1(ch), sizes), true};
}

std::optional<double> corollary1_size_requirement(const ChannelParams& ch) {
  const double q = p1(ch);
  if (q >= 1.0) return std::nullopt;
  if (q == 0.0) return 0.0;
  return kLn2 / std::log(1.0 / q);
}

BoundPair corollary1_bounds(const ClusterSizeHistogram& sizes, const ChannelParams& ch) {
  const double q = p1(ch);
  BoundPair out;
  out.lower = one_minus_exp_neg(weighted_power_sum(ch.epsilon, sizes));
  out.upper = one_minus_exp_neg(2.0 * kLn2 * weighted_power_sum(q, sizes));
  out.upper_valid =
      !sizes.empty() && smallest_cluster_large_enough(static_cast<double>(sizes.s_min()), ch);
  return out;
}

BoundPair corollary1_simple_bounds(std::uint64_t s_min, std::uint64_t s_max, std::uint64_t m,
                                   std::uint64_t n, const ChannelParams& ch) {
  if (s_min == 0 || s_max < s_min) {
    throw std::invalid_argument("cluster sizes must satisfy 0 < s_min <= s_max");
  }
  const double q = p1(ch);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  const auto smin = static_cast<double>(s_min);
  const auto smax = static_cast<double>(s_max);
  BoundPair out;
  out.lower = one_minus_exp_neg(mn * std::pow(ch.epsilon, smax) / smax);
  out.upper = one_minus_exp_neg(2.0 * kLn2 * mn * std::pow(q, smin) / smin);
  out.upper_valid = smallest_cluster_large_enough(smin, ch);
  return out;
}

SizeThresholds corollary2_thresholds(std::uint64_t m, std::uint64_t n, const ChannelParams& ch,
                                     double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  const double q = p1(ch);
  const double log_mn = std::log(static_cast<double>(m) * static_cast<double>(n));
  SizeThresholds out;
  if (q > 0.0 && q < 1.0) out.decodable_min_size = log_mn / std::log(1.0 / q);
  if (ch.epsilon > 0.0 && ch.epsilon < 1.0) {
    out.undecodable_max_size = (1.0 - delta) * log_mn / std::log(1.0 / ch.epsilon);
  }
  return out;
}

Separation mu_delta_d0(const ChannelParams& ch) {
  ch.validate();
  const double kept = (1.0 - ch.epsilon) * (1.0 - ch.epsilon);
  const double bias = 1.0 - 2.0 * ch.p;
  Separation s;
  s.mu = 2.0 * ch.p * (1.0 - ch.p) * kept;
  s.delta = kept * bias * bias;
  s.d0 = s.mu + s.delta / 3.0;
  return s;
}

double cross_cluster_disagreement_mean(const ChannelParams& ch) {
  ch.validate();
  return (1.0 - ch.epsilon) * (1.0 - ch.epsilon) * (ch.p * ch.p + (1.0 - ch.p) * (1.0 - ch.p));
}

double same_cluster_error_bound(std::uint64_t n, const ChannelParams& ch,
                                std::optional<double> alpha) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  const auto sep = mu_delta_d0(ch);
  const auto dn = static_cast<double>(n);
  const double a = alpha.value_or(dn / 3.0);
  const double numerator = sep.delta * sep.delta * a * a;
  const double denominator = sep.mu * dn;
  if (numerator == 0.0) return 1.0;
  if (denominator == 0.0) return 0.0;
  return unit(std::exp(-numerator / denominator));
}

double diff_cluster_error_bound(std::uint64_t n, double s_ij, const ChannelParams& ch,
                                std::optional<double> alpha) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  const auto sep = mu_delta_d0(ch);
  const auto dn = static_cast<double>(n);
  const double a = alpha.value_or(dn / 3.0);
  if (s_ij < a) return 1.0;
  const double gap = s_ij - a;
  const double numerator = sep.delta * sep.delta * gap * gap;
  const double denominator = 6.0 * (dn * sep.mu + sep.delta * a);
  if (numerator == 0.0) return 1.0;
  if (denominator == 0.0) return 0.0;
  return unit(std::exp(-numerator / denominator));
}

double t1_bound(std::uint64_t column_clusters) {
  if (column_clusters == 0) throw std::invalid_argument("column cluster count must be positive");
  return std::min(1.0, 2.0 * std::exp(-static_cast<double>(column_clusters) / 54.0));
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("entropy argument must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double fixed_matrix_cluster_threshold(std::uint64_t m, std::uint64_t n, double C) {
  if (m < 2 || n < 2) throw std::invalid_argument("m and n must be at least 2");
  const auto dm = static_cast<double>(m);
  const auto dn = static_cast<double>(n);
  return C * std::sqrt(dm * dn * std::log(dm) * std::log(dn));
}

BoundsReport make_bounds_report(const ClusterSizeHistogram& sizes, const ChannelParams& ch,
                                std::uint64_t m, std::uint64_t n, double delta) {
  BoundsReport r;
  r.p1 = {p1(ch), true};
  const auto thm1 = theorem1_bounds(sizes, ch);
  r.G_eps = {thm1.lower, true};
  r.G_p1 = {thm1.upper, true};
  const auto cor1 = corollary1_bounds(sizes, ch);
  r.cor1_lower = {cor1.lower, true};
  r.cor1_upper = {cor1.upper, cor1.upper_valid};
  const auto simple = corollary1_simple_bounds(sizes.s_min(), sizes.s_max(), m, n, ch);
  r.cor1_simple_lower = {simple.lower, true};
  r.cor1_simple_upper = {simple.upper, simple.upper_valid};
  const auto thresholds = corollary2_thresholds(m, n, ch, delta);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.cor2_lower_threshold = {thresholds.decodable_min_size.value_or(nan),
                            thresholds.decodable_min_size.has_value()};
  r.cor2_upper_threshold = {thresholds.undecodable_max_size.value_or(nan),
                            thresholds.undecodable_max_size.has_value()};
  return r;
}

}  // namespace blockrec
