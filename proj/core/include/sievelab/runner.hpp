#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sievelab/set_config.hpp"

namespace sievelab {

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::vector<std::string> parameters;
};

/// The eight experiments in a fixed order.
const std::vector<ExperimentInfo>& list_experiments();
bool is_experiment(std::string_view name);

/// Every field is optional until resolve() fills in the per-experiment defaults.
struct ExperimentConfig {
  std::string experiment;
  std::optional<std::string> set;
  std::optional<std::uint64_t> N;
  std::vector<std::uint64_t> grid;
  std::optional<double> eta;
  std::optional<int> k;
  std::optional<std::uint64_t> D0;
  std::optional<double> delta;
  std::optional<int> degree;
  std::optional<std::uint64_t> Q;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> rho;
  std::optional<std::uint64_t> U, V;
  std::optional<std::uint64_t> budget;
  std::optional<std::string> F;
  std::optional<std::string> tuple;
  unsigned threads = 1;
};

/// Keys match the long flag names ("N", "eta", "D0", ...). Numbers accept
/// forms like "1e6" as long as the value is an exact integer where needed.
ExperimentConfig config_from_key_values(const KeyValues& kv);
/// Set fields in a fixed order; reparses to the same config. `threads` is left
/// out since it never changes results.
KeyValues to_key_values(const ExperimentConfig& c);

/// Fills defaults and checks every parameter before any work starts.
ExperimentConfig resolve(const ExperimentConfig& c);

using Cell = std::variant<std::int64_t, double, std::string>;

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct PlotSeries {
  std::string name;
  std::string x_label, y_label;
  std::vector<std::pair<double, double>> points;
};

struct ExperimentResult {
  ExperimentConfig config;  // resolved
  std::vector<ResultTable> tables;  // tables[0] is the primary output
  std::vector<PlotSeries> plots;
  std::string headline;  // one line for stdout
  std::vector<std::string> warnings;
};

/// Tables come from `cache_dir` when it holds a matching cache.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// %.12g for doubles.
std::string format_cell(const Cell& c);
/// `# key = value` lines for the config, then a header row and the rows.
std::string format_csv(const ExperimentResult& r, std::size_t table = 0);
/// `# x_label y_label` then `x y` lines.
std::string format_plot(const PlotSeries& s);
/// Reads the config back out of the `# key = value` header of a CSV.
ExperimentConfig config_from_csv_header(std::string_view csv);

/// Primary CSV at `out`; other tables at <stem>.<name>.csv, plots at <stem>.<name>.dat.
std::vector<std::filesystem::path> write_outputs(const ExperimentResult& r, const std::filesystem::path& out);

}  // namespace sievelab
