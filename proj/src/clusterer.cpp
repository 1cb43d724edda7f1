#include "blockrec/clusterer.hpp"

#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "blockrec/bounds.hpp"
#include "blockrec/union_find.hpp"

namespace blockrec {

namespace {

std::size_t line_count(const ObservedMatrix& y, Axis axis) {
  return axis == Axis::Rows ? y.rows() : y.cols();
}

std::size_t line_length(const ObservedMatrix& y, Axis axis) {
  return axis == Axis::Rows ? y.cols() : y.rows();
}

Symbol symbol_on_line(const ObservedMatrix& y, Axis axis, std::size_t line, std::size_t pos) {
  return axis == Axis::Rows ? y(line, pos) : y(pos, line);
}

double normalized(std::uint64_t disagreements, std::size_t length) {
  return static_cast<double>(disagreements) / static_cast<double>(length);
}

// Every line of one axis as two bitsets: which positions are observed and
// which observed positions hold a 1.
class PackedLines {
 public:
  PackedLines(const ObservedMatrix& y, Axis axis)
      : count_(line_count(y, axis)),
        length_(line_length(y, axis)),
        words_((length_ + 63) / 64),
        observed_(count_ * words_, 0),
        ones_(count_ * words_, 0) {
    for (std::size_t line = 0; line < count_; ++line) {
      std::uint64_t* obs = &observed_[line * words_];
      std::uint64_t* one = &ones_[line * words_];
      for (std::size_t pos = 0; pos < length_; ++pos) {
        const Symbol s = symbol_on_line(y, axis, line, pos);
        if (s == Symbol::Erased) continue;
        const std::uint64_t bit = std::uint64_t{1} << (pos % 64);
        obs[pos / 64] |= bit;
        if (s == Symbol::One) one[pos / 64] |= bit;
      }
    }
  }

  std::size_t count() const { return count_; }
  std::size_t length() const { return length_; }

  std::uint64_t disagreements(std::size_t i, std::size_t j) const {
    const std::uint64_t* oi = &observed_[i * words_];
    const std::uint64_t* oj = &observed_[j * words_];
    const std::uint64_t* vi = &ones_[i * words_];
    const std::uint64_t* vj = &ones_[j * words_];
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      total += static_cast<std::uint64_t>(std::popcount(oi[w] & oj[w] & (vi[w] ^ vj[w])));
    }
    return total;
  }

 private:
  std::size_t count_;
  std::size_t length_;
  std::size_t words_;
  std::vector<std::uint64_t> observed_;
  std::vector<std::uint64_t> ones_;
};

AuditedClustering cluster_lines(const ObservedMatrix& y, double d0, Axis axis,
                                const Partition* truth) {
  const PackedLines lines(y, axis);
  if (truth != nullptr && truth->size() != lines.count()) {
    throw std::invalid_argument("reference partition length does not match the axis");
  }
  UnionFind components(lines.count());
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < lines.count(); ++i) {
    for (std::size_t j = i + 1; j < lines.count(); ++j) {
      const bool same = normalized(lines.disagreements(i, j), lines.length()) < d0;
      if (same) components.unite(i, j);
      if (truth != nullptr && same != (truth->label(i) == truth->label(j))) ++errors;
    }
  }
  return {Partition::from_labels(components.component_labels()), errors};
}

std::uint64_t pairs_within(std::uint64_t k) { return k * (k - 1) / 2; }

}  // namespace

double pairwise_distance(const ObservedMatrix& y, std::size_t i, std::size_t j, Axis axis) {
  const std::size_t count = line_count(y, axis);
  if (i >= count || j >= count) {
    throw std::out_of_range("line index out of range for distance (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
  }
  if (i == j) throw std::invalid_argument("distance needs two distinct lines");
  const std::size_t length = line_length(y, axis);
  std::uint64_t disagreements = 0;
  for (std::size_t pos = 0; pos < length; ++pos) {
    const Symbol a = symbol_on_line(y, axis, i, pos);
    const Symbol b = symbol_on_line(y, axis, j, pos);
    if (a != Symbol::Erased && b != Symbol::Erased && a != b) ++disagreements;
  }
  return normalized(disagreements, length);
}

PairwiseDecision decide_pair(const ObservedMatrix& y, std::size_t i, std::size_t j, double d0,
                             Axis axis) {
  const double d = pairwise_distance(y, i, j, axis);
  return {i, j, d, d < d0};
}

Partition partition_from_decisions(std::size_t length,
                                   std::span<const PairwiseDecision> decisions) {
  UnionFind components(length);
  for (const auto& decision : decisions) {
    if (decision.i >= length || decision.j >= length) {
      throw std::out_of_range("pairwise decision refers to an index beyond the axis length");
    }
    if (decision.same_cluster) components.unite(decision.i, decision.j);
  }
  return Partition::from_labels(components.component_labels());
}

Partition cluster_axis(const ObservedMatrix& y, double d0, Axis axis) {
  if (!(d0 >= 0.0 && d0 <= 1.0)) throw std::invalid_argument("threshold d0 must lie in [0, 1]");
  return cluster_lines(y, d0, axis, nullptr).partition;
}

AuditedClustering cluster_axis_audited(const ObservedMatrix& y, double d0, Axis axis,
                                       const Partition& truth) {
  if (!(d0 >= 0.0 && d0 <= 1.0)) throw std::invalid_argument("threshold d0 must lie in [0, 1]");
  return cluster_lines(y, d0, axis, &truth);
}

bool partition_match(const Partition& estimated, const Partition& truth) {
  if (estimated.size() != truth.size()) {
    throw std::invalid_argument("partitions of different lengths cannot be compared");
  }
  return estimated == truth;
}

std::uint64_t pairwise_error_count(const Partition& estimated, const Partition& truth) {
  if (estimated.size() != truth.size()) {
    throw std::invalid_argument("partitions of different lengths cannot be compared");
  }
  std::uint64_t same_estimated = 0;
  for (const auto s : estimated.sizes()) same_estimated += pairs_within(s);
  std::uint64_t same_truth = 0;
  for (const auto s : truth.sizes()) same_truth += pairs_within(s);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> joint;
  for (std::size_t i = 0; i < estimated.size(); ++i) ++joint[{estimated.label(i), truth.label(i)}];
  std::uint64_t same_both = 0;
  for (const auto& [key, count] : joint) same_both += pairs_within(count);
  return same_estimated + same_truth - 2 * same_both;
}

ClusterPipelineResult cluster_pipeline(const ObservedMatrix& y, const ChannelParams& ch) {
  const double d0 = mu_delta_d0(ch).d0;
  return {cluster_axis(y, d0, Axis::Rows), cluster_axis(y, d0, Axis::Columns)};
}

}  // namespace blockrec
