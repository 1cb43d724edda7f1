#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blockrec/model.hpp"
#include "blockrec/stats.hpp"

namespace blockrec {

enum class Mode {
  KnownClusters,   // decode with the true partitions
  ClusteringOnly,  // recover row and column partitions, no decoding
  FullPipeline,    // cluster, then decode with the estimated partitions
};

struct ExperimentConfig {
  GenerationLaw law;
  ChannelParams ch;
  TiePolicy tie = TiePolicy::FairCoin;
  Mode mode = Mode::KnownClusters;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<double> aspect_beta;    // when set, sweeps over n keep m = beta * n
  std::optional<double> erasure_scale;  // when set, epsilon = min(1, c / n)
  double delta = 0.5;                   // slack of the undecodable-size threshold

  // Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  // Channel with any erasure_scale preset applied.
  ChannelParams channel() const;
};

struct TrialResult {
  bool decode_error = false;
  bool row_cluster_exact = true;
  bool col_cluster_exact = true;
  std::uint64_t row_pairwise_errors = 0;   // from the reconstructed partition
  std::uint64_t row_decision_errors = 0;   // raw thresholded pair decisions
  bool degenerate_T = false;
  bool tie_occurred = false;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

// Streams of trial k: seed = derive_seed(master_seed, k), then
// derive_seed(seed, 0) for the matrix law, 1 for the channel, 2 for ties.
TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index);

// workers == 0 uses the hardware concurrency. Results are indexed by trial,
// so the output never depends on the worker count.
std::vector<TrialResult> run_trials(const ExperimentConfig& cfg, unsigned workers = 0);

struct EventEstimate {
  std::string name;
  ErrorEstimate estimate;
};

// Event names recorded in `mode`, in output order.
std::vector<std::string> recorded_events(Mode mode);

std::vector<EventEstimate> summarize(Mode mode, std::span<const TrialResult> results);

std::vector<EventEstimate> estimate_error_rates(const ExperimentConfig& cfg, unsigned workers = 0);

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

enum class SweepAxis { ClusterSize, Epsilon, P, N };

// Accepts "m0n0", "epsilon" (or "eps"), "p", "n". Throws std::invalid_argument.
SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);
std::string_view to_string(Mode mode);
std::string_view to_string(TiePolicy tie);

// Configuration with one swept parameter replaced. A joint cluster size s is
// split into m0 * n0 = s with m0 | m and n0 | n, choosing the most balanced
// split and m0 <= n0 on ties.
ExperimentConfig apply_sweep_value(const ExperimentConfig& base, SweepAxis axis, double value);

std::vector<std::string> result_columns(Mode mode);

// Parameters, then per event rate / ci_low / ci_high / trials, then the
// analytic bounds for the same parameters (NaN where undefined).
std::vector<double> result_row(const ExperimentConfig& cfg, std::span<const EventEstimate> events);

ResultTable sweep(const ExperimentConfig& base, SweepAxis axis, std::span<const double> values,
                  unsigned workers = 0);

// One-row table for an unswept configuration.
ResultTable run_experiment(const ExperimentConfig& cfg, unsigned workers = 0);

}  // namespace blockrec
