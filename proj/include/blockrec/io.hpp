#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blockrec/bounds.hpp"
#include "blockrec/experiment.hpp"
#include "blockrec/model.hpp"

namespace blockrec {

// Malformed file content; line() is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Bad or missing configuration key; key() names it.
class ConfigError : public FormatError {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix files: "m n\n" then m lines of exactly n characters from {0,1,e},
// every line LF-terminated, nothing else.
ObservedMatrix parse_matrix(std::string_view text);
std::string format_matrix(const ObservedMatrix& y);
ObservedMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const ObservedMatrix& y, const std::filesystem::path& path);
void write_matrix(const BlockConstantMatrix& x, const std::filesystem::path& path);

// Label files: "L\n" then L space-separated nonnegative integers and "\n".
// Labels are canonicalized on read.
Partition parse_labels(std::string_view text);
std::string format_labels(const Partition& partition);
Partition read_labels(const std::filesystem::path& path);
void write_labels(const Partition& partition, const std::filesystem::path& path);

struct SweepPlan {
  SweepAxis axis = SweepAxis::ClusterSize;
  std::vector<double> values;
};

struct ExperimentFile {
  ExperimentConfig config;
  std::optional<SweepPlan> sweep;
};

// Flat "key = value" lines; '#' starts a comment. Required keys: m, n, m0,
// n0, p, trials, seed, mode and one of eps / eps_c. Optional: tie, permute,
// beta, delta, sweep_axis, sweep_values (comma separated).
ExperimentFile parse_config(std::string_view text);
ExperimentFile read_config(const std::filesystem::path& path);

// 12 significant digits; NaN as "nan".
std::string format_number(double value);

std::string format_results_csv(const ResultTable& table);
ResultTable parse_results_csv(std::string_view text);
void write_results_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_results_csv(const std::filesystem::path& path);

// One "name=value" line per quantity; values whose hypothesis fails are
// suffixed with " (invalid)", undefined ones print as "undefined".
std::string format_bounds_report(const BoundsReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace blockrec
