#include "blockrec/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

#include "blockrec/bounds.hpp"
#include "blockrec/channel.hpp"
#include "blockrec/clusterer.hpp"
#include "blockrec/decoder.hpp"
#include "blockrec/experiment.hpp"
#include "blockrec/generator.hpp"
#include "blockrec/io.hpp"
#include "blockrec/random.hpp"

namespace blockrec {

namespace {

struct GenerateArgs {
  GenerationLaw law;
  bool no_permute = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;
};

struct ChannelArgs {
  ChannelParams ch;
  std::uint64_t seed = 0;
  std::string in;
  std::string out;
};

struct DecodeArgs {
  std::string row_labels;
  std::string col_labels;
  std::string tie = "fair_coin";
  std::uint64_t seed = 0;
  std::string in;
  std::string out;
};

struct ClusterArgs {
  ChannelParams ch;
  std::string in;
  std::string row_out;
  std::string col_out;
};

struct BoundsArgs {
  GenerationLaw law;
  ChannelParams ch;
  double delta = 0.5;
  double C = 1.0;
};

struct ExactArgs {
  std::vector<std::uint64_t> sizes;
  ChannelParams ch;
  std::uint64_t cap = kDefaultExactSizeCap;
};

struct ExperimentArgs {
  std::string config;
  std::string out;
  unsigned workers = 0;
};

const std::map<std::string, TiePolicy> kTieNames = {{"fair_coin", TiePolicy::FairCoin},
                                                    {"count_as_error", TiePolicy::CountAsError}};

void run_generate(const GenerateArgs& a, std::ostream& out) {
  GenerationLaw law = a.law;
  law.permute = !a.no_permute;
  RandomStream rng(a.seed);
  const auto x = sample_block_matrix(law, rng);
  write_matrix(x, a.out);
  if (!a.labels_out.empty()) {
    write_labels(x.row_partition(), a.labels_out + ".rows.txt");
    write_labels(x.col_partition(), a.labels_out + ".cols.txt");
  }
  out << "generated " << law.m << "x" << law.n << " matrix with "
      << x.row_partition().cluster_count() << "x" << x.col_partition().cluster_count()
      << " clusters\n";
}

void run_channel(const ChannelArgs& a) {
  const auto clean = read_matrix(a.in);
  if (clean.has_erasures()) throw FormatError(0, "channel input '" + a.in + "' contains erasures");
  RandomStream rng(a.seed);
  write_matrix(transmit(clean, a.ch, rng), a.out);
}

void run_decode(const DecodeArgs& a, std::ostream& err) {
  const auto y = read_matrix(a.in);
  const auto rows = read_labels(a.row_labels);
  const auto cols = read_labels(a.col_labels);
  if (rows.size() != y.rows() || cols.size() != y.cols()) {
    throw FormatError(0, "label files describe a " + std::to_string(rows.size()) + "x" +
                             std::to_string(cols.size()) + " matrix but '" + a.in + "' is " +
                             std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
  RandomStream rng(a.seed);
  const auto decoded = majority_decode(y, rows, cols, kTieNames.at(a.tie), rng);
  write_matrix(decoded.estimate, a.out);
  if (decoded.tie_occurred) err << "note: at least one cluster was tied\n";
}

void run_cluster(const ClusterArgs& a, std::ostream& out) {
  const auto y = read_matrix(a.in);
  const auto result = cluster_pipeline(y, a.ch);
  write_labels(result.rows, a.row_out);
  write_labels(result.cols, a.col_out);
  out << "row clusters=" << result.rows.cluster_count()
      << " column clusters=" << result.cols.cluster_count() << '\n';
}

void run_bounds(const BoundsArgs& a, std::ostream& out) {
  a.law.validate();
  const std::uint64_t r = a.law.row_clusters();
  const std::uint64_t t = a.law.col_clusters();
  const auto sizes = ClusterSizeHistogram::equal_clusters(r * t, a.law.cluster_size());
  out << format_bounds_report(make_bounds_report(sizes, a.ch, a.law.m, a.law.n, a.delta));
  const auto sep = mu_delta_d0(a.ch);
  out << "mu=" << format_number(sep.mu) << '\n'
      << "delta=" << format_number(sep.delta) << '\n'
      << "d0=" << format_number(sep.d0) << '\n'
      << "same_cluster_bound=" << format_number(same_cluster_error_bound(a.law.n, a.ch)) << '\n'
      << "t1_bound=" << format_number(t1_bound(t)) << '\n'
      << "prob_T_union_tight=" << format_number(prob_T_union_bound(r, t)) << '\n'
      << "prob_T_union_loose="
      << format_number(prob_T_union_bound_loose(a.law.m, a.law.n, r, t)) << '\n';
  if (a.law.m >= 2 && a.law.n >= 2) {
    out << "fixed_matrix_threshold="
        << format_number(fixed_matrix_cluster_threshold(a.law.m, a.law.n, a.C)) << '\n';
  }
}

void run_exact(const ExactArgs& a, std::ostream& out) {
  for (const auto& [name, tie] : kTieNames) {
    out << name << '=' << format_number(exact_pe_known_clusters(a.sizes, a.ch, tie, a.cap))
        << '\n';
  }
}

void run_experiment_command(const ExperimentArgs& a, std::ostream& out) {
  const auto file = read_config(a.config);
  const auto table = file.sweep ? sweep(file.config, file.sweep->axis, file.sweep->values,
                                        a.workers)
                                : run_experiment(file.config, a.workers);
  if (a.out.empty()) {
    out << format_results_csv(table);
  } else {
    write_results_csv(table, a.out);
  }
}

void add_channel_options(CLI::App& cmd, ChannelParams& ch) {
  cmd.add_option("--eps", ch.epsilon, "Erasure probability")->required()->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--p", ch.p, "Crossover probability")->required()->check(CLI::Range(0.0, 0.5));
}

void add_law_options(CLI::App& cmd, GenerationLaw& law) {
  cmd.add_option("--m", law.m, "Rows")->required()->check(CLI::PositiveNumber);
  cmd.add_option("--n", law.n, "Columns")->required()->check(CLI::PositiveNumber);
  cmd.add_option("--m0", law.m0, "Row cluster size")->required()->check(CLI::PositiveNumber);
  cmd.add_option("--n0", law.n0, "Column cluster size")->required()->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-constant binary matrix recovery from erased, bit-flipped observations",
               "blockrec"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample a block-constant matrix");
  add_law_options(*generate, gen.law);
  generate->add_flag("--no-permute", gen.no_permute, "Keep clusters as contiguous blocks");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--out", gen.out, "Matrix file to write")->required();
  generate->add_option("--labels-out", gen.labels_out,
                       "Prefix for <prefix>.rows.txt and <prefix>.cols.txt label files");

  ChannelArgs chan;
  auto* channel = app.add_subcommand("channel", "Pass a bit matrix through erasure + BSC");
  add_channel_options(*channel, chan.ch);
  channel->add_option("--seed", chan.seed, "Random seed");
  channel->add_option("--in", chan.in, "Input bit matrix")->required();
  channel->add_option("--out", chan.out, "Observed matrix to write")->required();

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Majority-decode with given partitions");
  decode->add_option("--row-labels", dec.row_labels, "Row label file")->required();
  decode->add_option("--col-labels", dec.col_labels, "Column label file")->required();
  decode->add_option("--tie", dec.tie, "Tie policy")
      ->check(CLI::IsMember({"fair_coin", "count_as_error"}));
  decode->add_option("--seed", dec.seed, "Seed for fair-coin ties");
  decode->add_option("--in", dec.in, "Observed matrix")->required();
  decode->add_option("--out", dec.out, "Decoded matrix to write")->required();

  ClusterArgs clu;
  auto* cluster = app.add_subcommand("cluster", "Recover row and column partitions");
  add_channel_options(*cluster, clu.ch);
  cluster->add_option("--in", clu.in, "Observed matrix")->required();
  cluster->add_option("--row-out", clu.row_out, "Row label file to write")->required();
  cluster->add_option("--col-out", clu.col_out, "Column label file to write")->required();

  BoundsArgs bnd;
  auto* bounds = app.add_subcommand("bounds", "Print analytic bounds for equal-size clusters");
  add_law_options(*bounds, bnd.law);
  add_channel_options(*bounds, bnd.ch);
  bounds->add_option("--delta", bnd.delta, "Slack of the undecodable threshold")
      ->check(CLI::Range(0.0, 1.0));
  bounds->add_option("--C", bnd.C, "Constant of the fixed-matrix cluster threshold");

  ExactArgs ex;
  auto* exact = app.add_subcommand("exact-pe", "Exact error probability with known clusters");
  exact->add_option("--sizes", ex.sizes, "Cluster sizes (comma separated)")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  add_channel_options(*exact, ex.ch);
  exact->add_option("--cap", ex.cap, "Largest cluster size evaluated exactly");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  experiment->add_option("--config", exp.config, "Experiment config file")->required();
  experiment->add_option("--out", exp.out, "CSV file to write (default: stdout)");
  experiment->add_option("--workers", exp.workers, "Worker threads (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*generate) run_generate(gen, out);
    if (*channel) run_channel(chan);
    if (*decode) run_decode(dec, err);
    if (*cluster) run_cluster(clu, out);
    if (*bounds) run_bounds(bnd, out);
    if (*exact) run_exact(ex, out);
    if (*experiment) run_experiment_command(exp, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace blockrec
