#include "blockrec/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "blockrec/numeric.hpp"

namespace blockrec {

void binomial_pmf(std::uint64_t trials, double prob, std::vector<double>& pmf) {
  pmf.assign(trials + 1, 0.0);
  if (prob <= 0.0) {
    pmf.front() = 1.0;
    return;
  }
  if (prob >= 1.0) {
    pmf.back() = 1.0;
    return;
  }
  const auto n = static_cast<double>(trials);
  const auto mode = std::min<std::uint64_t>(
      trials, static_cast<std::uint64_t>(std::floor((n + 1.0) * prob)));
  const auto k = static_cast<double>(mode);
  const double log_mode = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                          k * std::log(prob) + (n - k) * std::log1p(-prob);
  pmf[mode] = std::exp(log_mode);
  const double odds = prob / (1.0 - prob);
  for (std::uint64_t q = mode; q < trials; ++q) {
    pmf[q + 1] = pmf[q] * (static_cast<double>(trials - q) / static_cast<double>(q + 1)) * odds;
  }
  for (std::uint64_t q = mode; q > 0; --q) {
    pmf[q - 1] = pmf[q] * (static_cast<double>(q) / static_cast<double>(trials - q + 1)) / odds;
  }
}

DecodeResult majority_decode(const ObservedMatrix& y, const Partition& rows, const Partition& cols,
                             TiePolicy tie, RandomStream& tie_rng) {
  if (rows.size() != y.rows() || cols.size() != y.cols()) {
    throw std::invalid_argument("partition lengths " + std::to_string(rows.size()) + "x" +
                                std::to_string(cols.size()) + " do not match a " +
                                std::to_string(y.rows()) + "x" + std::to_string(y.cols()) +
                                " observation");
  }
  const std::size_t t = cols.cluster_count();
  const std::size_t clusters = rows.cluster_count() * t;
  std::vector<std::uint64_t> zeros(clusters, 0);
  std::vector<std::uint64_t> ones(clusters, 0);
  for (std::size_t i = 0; i < y.rows(); ++i) {
    const std::size_t base = rows.label(i) * t;
    for (std::size_t k = 0; k < y.cols(); ++k) {
      switch (y(i, k)) {
        case Symbol::Zero: ++zeros[base + cols.label(k)]; break;
        case Symbol::One: ++ones[base + cols.label(k)]; break;
        case Symbol::Erased: break;
      }
    }
  }

  std::vector<Bit> values(clusters);
  bool tie_occurred = false;
  for (std::size_t c = 0; c < clusters; ++c) {
    if (ones[c] != zeros[c]) {
      values[c] = ones[c] > zeros[c] ? 1 : 0;
      continue;
    }
    tie_occurred = true;
    values[c] = tie == TiePolicy::FairCoin ? tie_rng.fair_bit() : 0;
  }
  return {BlockConstantMatrix(rows, cols, std::move(values)), tie_occurred};
}

bool same_entries(const BlockConstantMatrix& a, const BlockConstantMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.row_partition() == b.row_partition() && a.col_partition() == b.col_partition()) {
    return std::equal(a.block_values().begin(), a.block_values().end(),
                      b.block_values().begin());
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.entry(i, k) != b.entry(i, k)) return false;
    }
  }
  return true;
}

namespace {

void check_crossover(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("crossover probability must lie in [0, 1/2]");
  }
}

double tie_weight(TiePolicy tie) { return tie == TiePolicy::FairCoin ? 0.5 : 0.0; }

DecisionProbabilities given_s(std::uint64_t s, double p, TiePolicy tie,
                              std::vector<double>& pmf) {
  const double w = tie_weight(tie);
  if (s == 0) return {w, 1.0 - w};
  binomial_pmf(s, p, pmf);
  CompensatedSum correct;
  CompensatedSum error;
  double tied = 0.0;
  for (std::uint64_t q = 0; q <= s; ++q) {
    if (2 * q < s) {
      correct.add(pmf[q]);
    } else if (2 * q > s) {
      error.add(pmf[q]);
    } else {
      tied = pmf[q];
    }
  }
  correct.add(w * tied);
  error.add((1.0 - w) * tied);
  return {std::clamp(correct.value(), 0.0, 1.0), std::clamp(error.value(), 0.0, 1.0)};
}

}  // namespace

DecisionProbabilities decision_probabilities_given_s(std::uint64_t s, double p, TiePolicy tie) {
  check_crossover(p);
  std::vector<double> pmf;
  return given_s(s, p, tie, pmf);
}

double cluster_correct_prob_given_s(std::uint64_t s, double p, TiePolicy tie) {
  return decision_probabilities_given_s(s, p, tie).correct;
}

DecisionProbabilities cluster_decision_probabilities(std::uint64_t size, const ChannelParams& ch,
                                                     TiePolicy tie, std::uint64_t size_cap) {
  ch.validate();
  if (size == 0) throw std::invalid_argument("cluster size must be positive");
  if (size > size_cap) {
    throw std::domain_error("exact evaluation of cluster size " + std::to_string(size) +
                            " exceeds the cap of " + std::to_string(size_cap) +
                            "; use Monte Carlo or the closed-form bounds instead");
  }
  std::vector<double> observed;
  binomial_pmf(size, 1.0 - ch.epsilon, observed);
  std::vector<double> flips;
  CompensatedSum correct;
  CompensatedSum error;
  for (std::uint64_t s = 0; s <= size; ++s) {
    const double weight = observed[s];
    if (weight == 0.0) continue;
    const auto given = given_s(s, ch.p, tie, flips);
    correct.add(weight * given.correct);
    error.add(weight * given.error);
  }
  return {std::clamp(correct.value(), 0.0, 1.0), std::clamp(error.value(), 0.0, 1.0)};
}

double cluster_correct_prob(std::uint64_t size, const ChannelParams& ch, TiePolicy tie,
                            std::uint64_t size_cap) {
  return cluster_decision_probabilities(size, ch, tie, size_cap).correct;
}

double exact_pe_known_clusters(const std::map<std::uint64_t, std::uint64_t>& size_counts,
                               const ChannelParams& ch, TiePolicy tie, std::uint64_t size_cap) {
  ch.validate();
  double log_all_correct = 0.0;
  for (const auto& [size, count] : size_counts) {
    if (count == 0) continue;
    const double error = cluster_decision_probabilities(size, ch, tie, size_cap).error;
    if (error >= 1.0) return 1.0;
    log_all_correct += static_cast<double>(count) * std::log1p(-error);
  }
  return std::clamp(-std::expm1(log_all_correct), 0.0, 1.0) + 0.0;  // no -0.0
}

double exact_pe_known_clusters(std::span<const std::uint64_t> cluster_sizes,
                               const ChannelParams& ch, TiePolicy tie, std::uint64_t size_cap) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto size : cluster_sizes) {
    if (size == 0) throw std::invalid_argument("cluster size must be positive");
    ++counts[size];
  }
  return exact_pe_known_clusters(counts, ch, tie, size_cap);
}

}  // namespace blockrec
