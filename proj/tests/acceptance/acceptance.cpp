// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "blockrec/bounds.hpp"
#include "blockrec/channel.hpp"
#include "blockrec/clusterer.hpp"
#include "blockrec/decoder.hpp"
#include "blockrec/experiment.hpp"
#include "blockrec/generator.hpp"
#include "blockrec/io.hpp"

using namespace blockrec;

namespace {

constexpr double kSlack = 1e-12;

class Report {
 public:
  void add(int id, const std::string& title, bool pass, const std::string& detail, double seconds) {
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", pass ? "PASS" : "FAIL", id, title.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    failures_ += pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
  return buffer;
}

// The cluster-size configurations of criteria 1 and 2.
std::vector<std::vector<std::uint64_t>> sandwich_configs() {
  return {std::vector<std::uint64_t>(1, 1), std::vector<std::uint64_t>(4, 2),
          std::vector<std::uint64_t>(16, 8), {2, 3, 5}};
}

ClusterSizeHistogram histogram(const std::vector<std::uint64_t>& sizes) {
  return ClusterSizeHistogram::from_sizes(sizes);
}

const std::vector<double> kEpsGrid = {0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<double> kPGrid = {0.0, 0.05, 0.1, 0.25, 0.4};

unsigned parallel_workers() { return std::max(4U, std::thread::hardware_concurrency()); }

void criterion1(Report& report) {
  Timer timer;
  int checks = 0;
  int violations = 0;
  double worst = 0.0;
  for (const auto& sizes : sandwich_configs()) {
    const auto hist = histogram(sizes);
    for (const double eps : kEpsGrid) {
      for (const double p : kPGrid) {
        const ChannelParams ch{eps, p};
        const double g_eps = G(eps, hist);
        const double g_p1 = G(p1(ch), hist);
        const double strict = exact_pe_known_clusters(sizes, ch, TiePolicy::CountAsError);
        const double fair = exact_pe_known_clusters(sizes, ch, TiePolicy::FairCoin);
        for (const double gap : {g_eps - strict, strict - g_p1, fair - g_p1}) {
          ++checks;
          worst = std::max(worst, gap);
          violations += gap > kSlack ? 1 : 0;
        }
      }
    }
  }
  report.add(1, "G(eps) <= exact_pe(count_as_error) <= G(p1), exact_pe(fair_coin) <= G(p1)",
             violations == 0,
             std::to_string(checks) + " inequalities, " + std::to_string(violations) +
                 " violated, largest excess " + fmt("%.3g", worst),
             timer.seconds());
}

void criterion2(Report& report) {
  Timer timer;
  double worst_strict = 0.0;
  double worst_fair = 0.0;
  for (const auto& sizes : sandwich_configs()) {
    const auto hist = histogram(sizes);
    for (const double eps : kEpsGrid) {
      const ChannelParams ch{eps, 0.0};
      const double strict = exact_pe_known_clusters(sizes, ch, TiePolicy::CountAsError);
      const double fair = exact_pe_known_clusters(sizes, ch, TiePolicy::FairCoin);
      double product = 1.0;
      for (const auto s : sizes) product *= 1.0 - std::pow(eps, static_cast<double>(s)) / 2.0;
      worst_strict = std::max(worst_strict, std::abs(strict - G(eps, hist)));
      worst_fair = std::max(worst_fair, std::abs(fair - (1.0 - product)));
    }
  }
  report.add(2, "p = 0: count_as_error equals G(eps), fair_coin equals 1 - prod(1 - eps^s/2)",
             worst_strict <= kSlack && worst_fair <= kSlack,
             fmt("max |diff| %.3g and %.3g", worst_strict, worst_fair), timer.seconds());
}

ExperimentConfig criterion3_config(TiePolicy tie) {
  ExperimentConfig cfg;
  cfg.law = GenerationLaw{12, 12, 3, 3, true};
  cfg.ch = ChannelParams{0.5, 0.1};
  cfg.tie = tie;
  cfg.mode = Mode::KnownClusters;
  cfg.trials = 100000;
  cfg.master_seed = 3;
  return cfg;
}

std::string criterion3_csv(unsigned workers) {
  std::string csv;
  for (const auto tie : {TiePolicy::FairCoin, TiePolicy::CountAsError}) {
    csv += format_results_csv(run_experiment(criterion3_config(tie), workers));
  }
  return csv;
}

void criterion3(Report& report) {
  Timer timer;
  bool pass = true;
  std::string detail;
  const std::vector<std::uint64_t> sizes(16, 9);
  for (const auto tie : {TiePolicy::FairCoin, TiePolicy::CountAsError}) {
    const auto cfg = criterion3_config(tie);
    const auto e = estimate_error_rates(cfg, 1).front().estimate;
    const double exact = exact_pe_known_clusters(sizes, cfg.ch, tie);
    const double distance = std::abs(e.rate - exact) / e.half_width();
    pass = pass && distance <= 3.0;
    detail += std::string(to_string(tie)) + fmt(": rate %.5f exact %.5f (%.2f half-widths); ",
                                                e.rate, exact, distance);
  }
  detail.resize(detail.size() - 2);
  report.add(3, "Monte Carlo known-cluster error within 3 Wilson half-widths of exact", pass,
             detail, timer.seconds());
}

void criterion4(Report& report) {
  Timer timer;
  int configs = 0;
  int violations = 0;
  for (const std::uint64_t size : {1, 2, 4, 8, 16, 32, 64}) {
    for (const std::uint64_t count : {1, 4, 16, 256}) {
      for (const double eps : kEpsGrid) {
        for (const double p : kPGrid) {
          const ChannelParams ch{eps, p};
          const auto need = corollary1_size_requirement(ch);
          if (!need || static_cast<double>(size) < *need) continue;
          ++configs;
          const auto hist = ClusterSizeHistogram::equal_clusters(count, size);
          const std::vector<std::uint64_t> sizes(count, size);
          const double exact = exact_pe_known_clusters(sizes, ch, TiePolicy::CountAsError);
          const auto cor = corollary1_bounds(hist, ch);
          const auto simple = corollary1_simple_bounds(size, size, count * size, 1, ch);
          const bool ok = cor.upper_valid && cor.lower <= exact + kSlack &&
                          exact <= cor.upper + kSlack && cor.lower >= simple.lower - kSlack &&
                          cor.upper <= simple.upper + kSlack;
          violations += ok ? 0 : 1;
        }
      }
    }
  }
  report.add(4, "cor1 bounds sandwich exact_pe and are at least as tight as the simple form",
             violations == 0 && configs > 0,
             std::to_string(configs) + " valid configurations, " + std::to_string(violations) +
                 " violations",
             timer.seconds());
}

ExperimentConfig criterion5_config() {
  ExperimentConfig cfg;
  cfg.law = GenerationLaw{1024, 1024, 1, 1, true};
  cfg.ch = ChannelParams{0.5, 0.05};
  cfg.mode = Mode::KnownClusters;
  cfg.trials = 200;
  cfg.master_seed = 5;
  return cfg;
}

const std::vector<double> kCriterion5Sizes = {64, 8};

ResultTable criterion5(Report& report) {
  Timer timer;
  const auto table = sweep(criterion5_config(), SweepAxis::ClusterSize, kCriterion5Sizes, 1);
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::find(table.columns.begin(), table.columns.end(), name) - table.columns.begin());
  };
  const double large = table.rows[0][col("decode_error_rate")];
  const double small = table.rows[1][col("decode_error_rate")];
  const double decodable = table.rows[0][col("cor2_decodable_min_size")];
  const double undecodable = table.rows[1][col("cor2_undecodable_max_size")];
  const bool thresholds_ok = 64 >= decodable && 8 <= undecodable;
  report.add(5, "phase transition at m = n = 1024, eps = 0.5, p = 0.05",
             large <= 0.05 && small >= 0.95 && thresholds_ok,
             fmt("size 64: error %.4f (need <= 0.05); size 8: error %.4f (need >= 0.95)", large,
                 small) +
                 fmt("; thresholds %.2f / %.2f", decodable, undecodable),
             timer.seconds());
  return table;
}

ExperimentConfig criterion6_config() {
  ExperimentConfig cfg;
  cfg.law = GenerationLaw{1024, 1024, 32, 32, true};
  cfg.ch = ChannelParams{0.3, 0.1};
  cfg.mode = Mode::ClusteringOnly;
  cfg.trials = 100;
  cfg.master_seed = 6;
  return cfg;
}

ResultTable criterion6(Report& report) {
  Timer timer;
  const auto cfg = criterion6_config();
  const auto results = run_trials(cfg, 1);
  const auto events = summarize(cfg.mode, results);
  double exact_rows = 0.0;
  double decision_errors = 0.0;
  double pairwise_errors = 0.0;
  for (const auto& r : results) {
    exact_rows += r.row_cluster_exact ? 1.0 : 0.0;
    decision_errors += static_cast<double>(r.row_decision_errors);
    pairwise_errors += static_cast<double>(r.row_pairwise_errors);
  }
  const double n = static_cast<double>(results.size());
  const double rate = exact_rows / n;
  const auto sep = mu_delta_d0(cfg.ch);
  report.add(6, "exact row-partition recovery rate >= 0.9 at m = n = 1024, 32 x 32 clusters",
             rate >= 0.9,
             fmt("recovery rate %.2f; mean wrong pair decisions per trial %.1f", rate,
                 decision_errors / n) +
                 fmt(", mean pairwise partition errors %.1f; d0 = %.5f", pairwise_errors / n,
                     sep.d0),
             timer.seconds());
  ResultTable table{result_columns(cfg.mode), {}};
  table.rows.push_back(result_row(cfg, events));
  return table;
}

void criterion7(Report& report) {
  Timer timer;
  const std::size_t n = 1024;
  const std::size_t differ = 384;
  ObservedMatrix clean(3, n);
  for (std::size_t k = 0; k < n; ++k) {
    clean(0, k) = k % 2 == 0 ? Symbol::Zero : Symbol::One;
    clean(1, k) = clean(0, k);
    clean(2, k) = k < differ ? (clean(0, k) == Symbol::Zero ? Symbol::One : Symbol::Zero)
                             : clean(0, k);
  }
  std::string detail;
  bool pass = true;
  for (const ChannelParams ch : {ChannelParams{0.3, 0.1}, ChannelParams{0.5, 0.2}}) {
    const auto sep = mu_delta_d0(ch);
    const int draws = 10000;
    double s1 = 0, s2 = 0, d1 = 0, d2 = 0;
    for (int s = 0; s < draws; ++s) {
      RandomStream rng(derive_seed(7, static_cast<std::uint64_t>(s)));
      const auto y = transmit(clean, ch, rng);
      const double same = pairwise_distance(y, 0, 1, Axis::Rows);
      const double diff = pairwise_distance(y, 0, 2, Axis::Rows);
      s1 += same;
      s2 += same * same;
      d1 += diff;
      d2 += diff * diff;
    }
    const auto z_score = [draws](double sum, double sum_sq, double target) {
      const double mean = sum / draws;
      const double var = (sum_sq / draws - mean * mean) * draws / (draws - 1.0);
      return (mean - target) / std::sqrt(var / draws);
    };
    const double z_same = z_score(s1, s2, sep.mu);
    const double z_diff = z_score(d1, d2, sep.mu + sep.delta * differ / double(n));
    pass = pass && std::abs(z_same) <= 3 && std::abs(z_diff) <= 3;
    detail += fmt("eps %.1f p %.1f: ", ch.epsilon, ch.p) +
              fmt("same z = %.2f, different (s_ij = 384) z = %.2f; ", z_same, z_diff);
  }
  detail.resize(detail.size() - 2);
  report.add(7, "mean distance equals mu and mu + delta s_ij / n within 3 standard errors", pass,
             detail, timer.seconds());
}

// Exact Pr(T) for r = t = 2 by enumerating the 16 block tables.
double enumerate_prob_T_2x2() {
  int hits = 0;
  for (int mask = 0; mask < 16; ++mask) {
    const int a = mask & 1, b = (mask >> 1) & 1, c = (mask >> 2) & 1, d = (mask >> 3) & 1;
    const bool rows_equal = a == c && b == d;
    const bool cols_equal = a == b && c == d;
    hits += rows_equal || cols_equal ? 1 : 0;
  }
  return hits / 16.0;
}

void criterion8(Report& report) {
  Timer timer;
  const GenerationLaw law{2, 2, 1, 1, true};
  const int draws = 1000000;
  int hits = 0;
  for (int s = 0; s < draws; ++s) {
    RandomStream rng(derive_seed(8, static_cast<std::uint64_t>(s)));
    hits += degenerate_event_T(sample_block_matrix(law, rng)) ? 1 : 0;
  }
  const double rate = hits / double(draws);
  const double exact = enumerate_prob_T_2x2();
  const double bound = prob_T_union_bound(2, 2);
  report.add(8, "Pr(T) for r = t = 2 matches enumeration within 0.002 and stays below the union bound",
             std::abs(rate - exact) <= 0.002 && rate <= bound,
             fmt("empirical %.5f, enumeration %.5f, union bound %.2f", rate, exact, bound),
             timer.seconds());
}

void criterion9(Report& report, const std::string& c3, const std::string& c5,
                const std::string& c6) {
  Timer timer;
  const unsigned workers = parallel_workers();
  const bool same3 = criterion3_csv(workers) == c3;
  const bool same5 =
      format_results_csv(sweep(criterion5_config(), SweepAxis::ClusterSize, kCriterion5Sizes,
                               workers)) == c5;
  const bool same6 = format_results_csv(run_experiment(criterion6_config(), workers)) == c6;
  report.add(9, "CSV output is byte identical when rerun with " + std::to_string(workers) +
                    " workers",
             same3 && same5 && same6,
             std::string("criterion 3 ") + (same3 ? "same" : "differs") + ", criterion 5 " +
                 (same5 ? "same" : "differs") + ", criterion 6 " + (same6 ? "same" : "differs"),
             timer.seconds());
}

}  // namespace

int main() {
  Report report;
  criterion1(report);
  criterion2(report);
  criterion3(report);
  criterion4(report);

  const auto c5_table = criterion5(report);
  const auto c6_table = criterion6(report);
  criterion7(report);
  criterion8(report);
  criterion9(report, criterion3_csv(1), format_results_csv(c5_table),
             format_results_csv(c6_table));

  std::printf("%d of 9 criteria failed\n", report.failures());
  return report.failures() == 0 ? 0 : 1;
}
