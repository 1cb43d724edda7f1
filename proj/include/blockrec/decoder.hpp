#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "blockrec/model.hpp"
#include "blockrec/random.hpp"

namespace blockrec {

// Largest cluster the exact evaluators accept by default. The cost is
// quadratic in the cluster size; beyond this, use Monte Carlo or the
// closed-form bounds.
inline constexpr std::uint64_t kDefaultExactSizeCap = 20000;

struct DecodeResult {
  BlockConstantMatrix estimate;
  bool tie_occurred = false;
};

// Majority vote per cluster over the non-erased entries. Ties under FairCoin
// draw one fair bit per tied cluster from `tie_rng`, scanning clusters
// row-major by cluster id; under CountAsError they emit 0. Either way
// tie_occurred is set. Throws std::invalid_argument on a dimension mismatch.
DecodeResult majority_decode(const ObservedMatrix& y, const Partition& rows, const Partition& cols,
                             TiePolicy tie, RandomStream& tie_rng);

// True iff both matrices have the same dimensions and equal entries.
bool same_entries(const BlockConstantMatrix& a, const BlockConstantMatrix& b);

struct DecisionProbabilities {
  double correct = 0.0;
  double error = 0.0;
};

// Probability of a correct / wrong majority decision from s non-erased
// samples, each flipped with probability p. Both sides are summed directly
// so either one keeps full relative precision near 0.
DecisionProbabilities decision_probabilities_given_s(std::uint64_t s, double p, TiePolicy tie);

double cluster_correct_prob_given_s(std::uint64_t s, double p, TiePolicy tie);

// Averages the above over the Binomial(size, 1 - epsilon) number of
// non-erased samples. Throws std::domain_error if size exceeds `size_cap`.
DecisionProbabilities cluster_decision_probabilities(std::uint64_t size, const ChannelParams& ch,
                                                     TiePolicy tie,
                                                     std::uint64_t size_cap = kDefaultExactSizeCap);

double cluster_correct_prob(std::uint64_t size, const ChannelParams& ch, TiePolicy tie,
                            std::uint64_t size_cap = kDefaultExactSizeCap);

// Exact block error probability of the majority decoder with known clusters:
// 1 - prod_k Pr(cluster k correct), evaluated as -expm1(sum log1p(-error_k)).
double exact_pe_known_clusters(std::span<const std::uint64_t> cluster_sizes,
                               const ChannelParams& ch, TiePolicy tie,
                               std::uint64_t size_cap = kDefaultExactSizeCap);

// Same, from a size -> multiplicity map; each distinct size is evaluated once.
double exact_pe_known_clusters(const std::map<std::uint64_t, std::uint64_t>& size_counts,
                               const ChannelParams& ch, TiePolicy tie,
                               std::uint64_t size_cap = kDefaultExactSizeCap);

}  // namespace blockrec
