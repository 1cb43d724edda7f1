#include "blockrec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>

namespace blockrec {

FormatError::FormatError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& message)
    : FormatError(line, "key '" + key + "': " + message), key_(std::move(key)) {}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return text;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

namespace {

// Lines of an LF-terminated text. Throws if the final line lacks its newline.
std::vector<std::string_view> split_lines(std::string_view text, const char* what) {
  std::vector<std::string_view> lines;
  if (text.empty()) throw FormatError(1, std::string("empty ") + what + " file");
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      throw FormatError(lines.size() + 1, "missing terminating newline");
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

template <typename T>
bool parse_integer(std::string_view token, T& out) {
  if (token.empty() || token.front() == '+' || token.front() == '-') return false;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

bool parse_double(std::string_view token, double& out) {
  if (token.empty()) return false;
  if (token == "nan") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  if (token == "inf" || token == "-inf") {
    out = token == "inf" ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
    return true;
  }
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) return parts;
    start = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ObservedMatrix parse_matrix(std::string_view text) {
  const auto lines = split_lines(text, "matrix");
  const auto header = split(lines[0], ' ');
  std::size_t m = 0;
  std::size_t n = 0;
  if (header.size() != 2 || !parse_integer(header[0], m) || !parse_integer(header[1], n) ||
      m == 0 || n == 0) {
    throw FormatError(1, "malformed header, expected two positive integers 'm n'");
  }
  if (lines.size() < m + 1) {
    throw FormatError(lines.size() + 1, "expected " + std::to_string(m) +
                                            " matrix lines, found " +
                                            std::to_string(lines.size() - 1));
  }
  if (lines.size() > m + 1) throw FormatError(m + 2, "unexpected content after the last row");
  std::vector<Symbol> entries;
  entries.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto line = lines[i + 1];
    const std::size_t line_no = i + 2;
    for (std::size_t k = 0; k < line.size() && k < n; ++k) {
      switch (line[k]) {
        case '0': entries.push_back(Symbol::Zero); break;
        case '1': entries.push_back(Symbol::One); break;
        case 'e': entries.push_back(Symbol::Erased); break;
        default:
          throw FormatError(line_no, "illegal character at column " + std::to_string(k + 1));
      }
    }
    if (line.size() != n) {
      throw FormatError(line_no, "expected " + std::to_string(n) + " characters, found " +
                                     std::to_string(line.size()));
    }
  }
  return ObservedMatrix(m, n, std::move(entries));
}

std::string format_matrix(const ObservedMatrix& y) {
  std::string out = std::to_string(y.rows()) + ' ' + std::to_string(y.cols()) + '\n';
  out.reserve(out.size() + y.rows() * (y.cols() + 1));
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t k = 0; k < y.cols(); ++k) {
      switch (y(i, k)) {
        case Symbol::Zero: out.push_back('0'); break;
        case Symbol::One: out.push_back('1'); break;
        case Symbol::Erased: out.push_back('e'); break;
      }
    }
    out.push_back('\n');
  }
  return out;
}

ObservedMatrix read_matrix(const std::filesystem::path& path) {
  return parse_matrix(read_text_file(path));
}

void write_matrix(const ObservedMatrix& y, const std::filesystem::path& path) {
  write_text_file(path, format_matrix(y));
}

void write_matrix(const BlockConstantMatrix& x, const std::filesystem::path& path) {
  write_matrix(to_observed(x), path);
}

Partition parse_labels(std::string_view text) {
  const auto lines = split_lines(text, "labels");
  std::size_t length = 0;
  if (!parse_integer(lines[0], length) || length == 0) {
    throw FormatError(1, "malformed header, expected a positive label count");
  }
  if (lines.size() != 2) throw FormatError(std::min<std::size_t>(lines.size() + 1, 3),
                                           "expected exactly one line of labels");
  const auto tokens = split(lines[1], ' ');
  if (tokens.size() != length) {
    throw FormatError(2, "count mismatch: header says " + std::to_string(length) + ", found " +
                             std::to_string(tokens.size()) + " labels");
  }
  std::vector<std::int64_t> labels(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (!parse_integer(tokens[i], labels[i])) {
      throw FormatError(2, "label " + std::to_string(i + 1) + " is not a nonnegative integer: '" +
                               std::string(tokens[i]) + "'");
    }
  }
  return Partition::from_labels(labels);
}

std::string format_labels(const Partition& partition) {
  std::string out = std::to_string(partition.size()) + '\n';
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += std::to_string(partition.label(i));
  }
  out.push_back('\n');
  return out;
}

Partition read_labels(const std::filesystem::path& path) {
  return parse_labels(read_text_file(path));
}

void write_labels(const Partition& partition, const std::filesystem::path& path) {
  write_text_file(path, format_labels(partition));
}

namespace {

struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

class ConfigReader {
 public:
  explicit ConfigReader(std::map<std::string, ConfigEntry> entries)
      : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const ConfigEntry& required(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(0, key, "missing required key");
    return it->second;
  }

  std::uint64_t integer(const std::string& key) const {
    const auto& e = required(key);
    std::uint64_t v = 0;
    if (!parse_integer(std::string_view(e.value), v)) {
      throw ConfigError(e.line, key, "expected a nonnegative integer, got '" + e.value + "'");
    }
    return v;
  }

  double real(const std::string& key) const {
    const auto& e = required(key);
    double v = 0.0;
    if (!parse_double(e.value, v) || !std::isfinite(v)) {
      throw ConfigError(e.line, key, "expected a number, got '" + e.value + "'");
    }
    return v;
  }

  bool boolean(const std::string& key) const {
    const auto& e = required(key);
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ConfigError(e.line, key, "expected true or false, got '" + e.value + "'");
  }

  const std::string& text(const std::string& key) const { return required(key).value; }
  std::size_t line(const std::string& key) const { return required(key).line; }

 private:
  std::map<std::string, ConfigEntry> entries_;
};

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "m",    "n",   "m0",      "n0",    "eps",        "eps_c",       "p",
      "trials", "seed", "mode", "tie",   "permute",    "beta",        "delta",
      "sweep_axis", "sweep_values"};
  return keys;
}

}  // namespace

ExperimentFile parse_config(std::string_view text) {
  std::map<std::string, ConfigEntry> entries;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw FormatError(line_no, "missing key before '='");
    const auto& known = known_config_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(line_no, key, "unknown key");
    }
    if (!entries.try_emplace(key, ConfigEntry{value, line_no}).second) {
      throw ConfigError(line_no, key, "duplicate key");
    }
  }

  const ConfigReader r(std::move(entries));
  ExperimentFile file;
  auto& cfg = file.config;
  cfg.law.m = r.integer("m");
  cfg.law.n = r.integer("n");
  cfg.law.m0 = r.integer("m0");
  cfg.law.n0 = r.integer("n0");
  if (r.has("permute")) cfg.law.permute = r.boolean("permute");
  if (r.has("eps")) {
    cfg.ch.epsilon = r.real("eps");
  } else if (r.has("eps_c")) {
    cfg.erasure_scale = r.real("eps_c");
  } else {
    throw ConfigError(0, "eps", "missing required key (or eps_c)");
  }
  if (r.has("eps") && r.has("eps_c")) {
    throw ConfigError(r.line("eps_c"), "eps_c", "conflicts with eps");
  }
  cfg.ch.p = r.real("p");
  cfg.trials = r.integer("trials");
  cfg.master_seed = r.integer("seed");

  const auto& mode = r.text("mode");
  if (mode == "known_clusters") {
    cfg.mode = Mode::KnownClusters;
  } else if (mode == "clustering_only") {
    cfg.mode = Mode::ClusteringOnly;
  } else if (mode == "full_pipeline") {
    cfg.mode = Mode::FullPipeline;
  } else {
    throw ConfigError(r.line("mode"), "mode",
                      "expected known_clusters, clustering_only or full_pipeline, got '" + mode +
                          "'");
  }
  if (r.has("tie")) {
    const auto& tie = r.text("tie");
    if (tie == "fair_coin") {
      cfg.tie = TiePolicy::FairCoin;
    } else if (tie == "count_as_error") {
      cfg.tie = TiePolicy::CountAsError;
    } else {
      throw ConfigError(r.line("tie"), "tie",
                        "expected fair_coin or count_as_error, got '" + tie + "'");
    }
  }
  if (r.has("beta")) cfg.aspect_beta = r.real("beta");
  if (r.has("delta")) cfg.delta = r.real("delta");

  if (r.has("sweep_axis") != r.has("sweep_values")) {
    const std::string missing = r.has("sweep_axis") ? "sweep_values" : "sweep_axis";
    throw ConfigError(0, missing, "sweep_axis and sweep_values must be given together");
  }
  if (r.has("sweep_axis")) {
    SweepPlan plan;
    try {
      plan.axis = parse_sweep_axis(r.text("sweep_axis"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(r.line("sweep_axis"), "sweep_axis", e.what());
    }
    const auto& values = r.text("sweep_values");
    if (!trim(values).empty()) {
      for (const auto token : split(values, ',')) {
        double v = 0.0;
        if (!parse_double(trim(token), v) || !std::isfinite(v)) {
          throw ConfigError(r.line("sweep_values"), "sweep_values",
                            "expected comma-separated numbers, got '" + std::string(token) + "'");
        }
        plan.values.push_back(v);
      }
    }
    file.sweep = std::move(plan);
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(0, std::string("invalid configuration: ") + e.what());
  }
  return file;
}

ExperimentFile read_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string format_results_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out.push_back(',');
    out += table.columns[c];
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("result row width does not match the header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(',');
      out += format_number(row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

ResultTable parse_results_csv(std::string_view text) {
  const auto lines = split_lines(text, "results");
  ResultTable table;
  for (const auto name : split(lines[0], ',')) {
    if (name.empty()) throw FormatError(1, "empty column name");
    table.columns.emplace_back(name);
  }
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = split(lines[l], ',');
    if (cells.size() != table.columns.size()) {
      throw FormatError(l + 1, "expected " + std::to_string(table.columns.size()) +
                                   " fields, found " + std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(cells[c], row[c])) {
        throw FormatError(l + 1, "column '" + table.columns[c] + "' is not a number");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_results_csv(const ResultTable& table, const std::filesystem::path& path) {
  write_text_file(path, format_results_csv(table));
}

ResultTable read_results_csv(const std::filesystem::path& path) {
  return parse_results_csv(read_text_file(path));
}

std::string format_bounds_report(const BoundsReport& report) {
  std::ostringstream out;
  const auto line = [&out](const char* name, const BoundValue& v) {
    out << name << '=';
    if (std::isnan(v.value)) {
      out << "undefined";
    } else {
      out << format_number(v.value);
      if (!v.valid) out << " (invalid)";
    }
    out << '\n';
  };
  line("p1", report.p1);
  line("G_eps", report.G_eps);
  line("G_p1", report.G_p1);
  line("cor1_lower", report.cor1_lower);
  line("cor1_upper", report.cor1_upper);
  line("cor1_simple_lower", report.cor1_simple_lower);
  line("cor1_simple_upper", report.cor1_simple_upper);
  line("cor2_decodable_min_size", report.cor2_lower_threshold);
  line("cor2_undecodable_max_size", report.cor2_upper_threshold);
  return out.str();
}

}  // namespace blockrec
