#include "blockrec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "blockrec/bounds.hpp"
#include "blockrec/channel.hpp"
#include "blockrec/clusterer.hpp"
#include "blockrec/decoder.hpp"
#include "blockrec/generator.hpp"
#include "blockrec/random.hpp"

namespace blockrec {

void ExperimentConfig::validate() const {
  law.validate();
  channel().validate();
  if (trials == 0) throw std::invalid_argument("an experiment needs at least one trial");
  if (aspect_beta && !(*aspect_beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (erasure_scale && !(*erasure_scale >= 0.0)) {
    throw std::invalid_argument("erasure scale c must be nonnegative");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

ChannelParams ExperimentConfig::channel() const {
  ChannelParams out = ch;
  if (erasure_scale) out.epsilon = std::min(1.0, *erasure_scale / static_cast<double>(law.n));
  return out;
}

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index) {
  const std::uint64_t seed = derive_seed(cfg.master_seed, trial_index);
  RandomStream law_rng(derive_seed(seed, 0));
  RandomStream channel_rng(derive_seed(seed, 1));
  RandomStream tie_rng(derive_seed(seed, 2));
  const ChannelParams ch = cfg.channel();

  const auto x = sample_block_matrix(cfg.law, law_rng);
  const auto y = transmit(x, ch, channel_rng);

  TrialResult result;
  result.degenerate_T = degenerate_event_T(x);

  const auto decode_with = [&](const Partition& rows, const Partition& cols) {
    const auto decoded = majority_decode(y, rows, cols, cfg.tie, tie_rng);
    result.tie_occurred = decoded.tie_occurred;
    result.decode_error = !same_entries(decoded.estimate, x) ||
                          (cfg.tie == TiePolicy::CountAsError && decoded.tie_occurred);
  };

  if (cfg.mode == Mode::KnownClusters) {
    decode_with(x.row_partition(), x.col_partition());
    return result;
  }

  const double d0 = mu_delta_d0(ch).d0;
  auto rows = cluster_axis_audited(y, d0, Axis::Rows, x.row_partition());
  auto cols = cluster_axis(y, d0, Axis::Columns);
  result.row_cluster_exact = partition_match(rows.partition, x.row_partition());
  result.col_cluster_exact = partition_match(cols, x.col_partition());
  result.row_pairwise_errors = pairwise_error_count(rows.partition, x.row_partition());
  result.row_decision_errors = rows.decision_errors;
  if (cfg.mode == Mode::FullPipeline) decode_with(rows.partition, cols);
  return result;
}

std::vector<TrialResult> run_trials(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  std::vector<TrialResult> results(cfg.trials);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cfg.trials));

  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto work = [&] {
    for (;;) {
      const std::uint64_t index = next.fetch_add(1);
      if (index >= cfg.trials) return;
      try {
        results[index] = run_trial(cfg, index);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(cfg.trials);
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

std::vector<std::string> recorded_events(Mode mode) {
  switch (mode) {
    case Mode::KnownClusters: return {"decode_error", "degenerate_T", "tie"};
    case Mode::ClusteringOnly: return {"row_cluster_error", "col_cluster_error", "degenerate_T"};
    case Mode::FullPipeline:
      return {"decode_error", "row_cluster_error", "col_cluster_error", "degenerate_T", "tie"};
  }
  throw std::logic_error("unknown mode");
}

namespace {

bool event_occurred(const std::string& name, const TrialResult& r) {
  if (name == "decode_error") return r.decode_error;
  if (name == "row_cluster_error") return !r.row_cluster_exact;
  if (name == "col_cluster_error") return !r.col_cluster_exact;
  if (name == "degenerate_T") return r.degenerate_T;
  if (name == "tie") return r.tie_occurred;
  throw std::logic_error("unknown event " + name);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double or_nan(const std::optional<double>& v) { return v.value_or(kNaN); }

std::size_t checked_size(double value, const char* what) {
  if (!(value >= 1.0) || value != std::floor(value) || value > 1e15) {
    throw std::invalid_argument(std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

std::vector<EventEstimate> summarize(Mode mode, std::span<const TrialResult> results) {
  std::vector<EventEstimate> out;
  for (const auto& name : recorded_events(mode)) {
    std::uint64_t hits = 0;
    for (const auto& r : results) hits += event_occurred(name, r) ? 1 : 0;
    out.push_back({name, make_estimate(hits, results.size())});
  }
  return out;
}

std::vector<EventEstimate> estimate_error_rates(const ExperimentConfig& cfg, unsigned workers) {
  const auto results = run_trials(cfg, workers);
  return summarize(cfg.mode, results);
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "m0n0") return SweepAxis::ClusterSize;
  if (name == "epsilon" || name == "eps") return SweepAxis::Epsilon;
  if (name == "p") return SweepAxis::P;
  if (name == "n") return SweepAxis::N;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected m0n0, epsilon, p or n)");
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::ClusterSize: return "m0n0";
    case SweepAxis::Epsilon: return "epsilon";
    case SweepAxis::P: return "p";
    case SweepAxis::N: return "n";
  }
  return "?";
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::KnownClusters: return "known_clusters";
    case Mode::ClusteringOnly: return "clustering_only";
    case Mode::FullPipeline: return "full_pipeline";
  }
  return "?";
}

std::string_view to_string(TiePolicy tie) {
  return tie == TiePolicy::FairCoin ? "fair_coin" : "count_as_error";
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& base, SweepAxis axis, double value) {
  ExperimentConfig cfg = base;
  switch (axis) {
    case SweepAxis::ClusterSize: {
      const std::size_t size = checked_size(value, "cluster size");
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t m0 = 1; m0 <= size; ++m0) {
        if (size % m0 != 0) continue;
        const std::size_t n0 = size / m0;
        if (cfg.law.m % m0 != 0 || cfg.law.n % n0 != 0) continue;
        const auto gap = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
        if (!best || gap(m0, n0) < gap(best->first, best->second)) best = {m0, n0};
      }
      if (!best) {
        throw std::invalid_argument("cluster size " + std::to_string(size) +
                                    " has no split m0 * n0 dividing the matrix dimensions");
      }
      cfg.law.m0 = best->first;
      cfg.law.n0 = best->second;
      break;
    }
    case SweepAxis::Epsilon:
      cfg.ch.epsilon = value;
      cfg.erasure_scale.reset();
      break;
    case SweepAxis::P: cfg.ch.p = value; break;
    case SweepAxis::N:
      cfg.law.n = checked_size(value, "n");
      if (cfg.aspect_beta) {
        cfg.law.m = checked_size(std::round(*cfg.aspect_beta * value), "beta * n");
      }
      break;
  }
  cfg.validate();
  return cfg;
}

std::vector<std::string> result_columns(Mode mode) {
  std::vector<std::string> columns = {"m", "n", "m0", "n0", "cluster_size", "eps", "p"};
  for (const auto& event : recorded_events(mode)) {
    for (const char* suffix : {"_rate", "_ci_low", "_ci_high", "_trials"}) {
      columns.push_back(event + suffix);
    }
  }
  for (const char* bound :
       {"p1", "G_eps", "G_p1", "cor1_lower", "cor1_upper", "cor1_upper_valid",
        "cor1_simple_lower", "cor1_simple_upper", "cor2_decodable_min_size",
        "cor2_undecodable_max_size", "prob_T_union_tight", "prob_T_union_loose", "exact_pe", "mu",
        "d0", "same_cluster_bound", "t1_bound"}) {
    columns.emplace_back(bound);
  }
  return columns;
}

std::vector<double> result_row(const ExperimentConfig& cfg, std::span<const EventEstimate> events) {
  const auto& law = cfg.law;
  const ChannelParams ch = cfg.channel();
  std::vector<double> row = {static_cast<double>(law.m),  static_cast<double>(law.n),
                             static_cast<double>(law.m0), static_cast<double>(law.n0),
                             static_cast<double>(law.cluster_size()), ch.epsilon, ch.p};
  for (const auto& e : events) {
    row.insert(row.end(), {e.estimate.rate, e.estimate.ci_low, e.estimate.ci_high,
                           static_cast<double>(e.estimate.trials)});
  }

  const std::uint64_t r = law.row_clusters();
  const std::uint64_t t = law.col_clusters();
  const auto sizes = ClusterSizeHistogram::equal_clusters(r * t, law.cluster_size());
  const auto thm1 = theorem1_bounds(sizes, ch);
  const auto cor1 = corollary1_bounds(sizes, ch);
  const auto simple = corollary1_simple_bounds(sizes.s_min(), sizes.s_max(), law.m, law.n, ch);
  const auto thresholds = corollary2_thresholds(law.m, law.n, ch, cfg.delta);
  double exact = kNaN;
  try {
    exact = exact_pe_known_clusters(sizes.counts(), ch, cfg.tie);
  } catch (const std::domain_error&) {
    // Cluster too large for the exact evaluator; the bounds still apply.
  }
  const auto sep = mu_delta_d0(ch);
  row.insert(row.end(), {p1(ch), thm1.lower, thm1.upper, cor1.lower, cor1.upper,
                         cor1.upper_valid ? 1.0 : 0.0, simple.lower, simple.upper,
                         or_nan(thresholds.decodable_min_size),
                         or_nan(thresholds.undecodable_max_size), prob_T_union_bound(r, t),
                         prob_T_union_bound_loose(law.m, law.n, r, t), exact, sep.mu, sep.d0,
                         same_cluster_error_bound(law.n, ch), t1_bound(t)});
  return row;
}

ResultTable sweep(const ExperimentConfig& base, SweepAxis axis, std::span<const double> values,
                  unsigned workers) {
  ResultTable table{result_columns(base.mode), {}};
  for (const double value : values) {
    const auto cfg = apply_sweep_value(base, axis, value);
    const auto events = estimate_error_rates(cfg, workers);
    table.rows.push_back(result_row(cfg, events));
  }
  return table;
}

ResultTable run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  ResultTable table{result_columns(cfg.mode), {}};
  const auto events = estimate_error_rates(cfg, workers);
  table.rows.push_back(result_row(cfg, events));
  return table;
}

}  // namespace blockrec
