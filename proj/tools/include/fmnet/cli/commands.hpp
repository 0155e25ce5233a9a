#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "fmnet/cli/config.hpp"

namespace fmnet::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kSelftestFailed = 3 };

/// Writes outputs.csv (one row per trial, family and r) and outputs.json
/// (per-(family, r) mean and standard deviation) under out_dir.
void cmd_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir, unsigned threads,
               std::ostream& log);

struct RenderRequest {
  std::string what;  // field, tree or graph
  std::optional<std::filesystem::path> file;  // default: <what>.svg
  Family family = Family::FMN;  // graph only
  std::optional<double> r;  // restriction radius for graph, default r_grid.max
};

/// Renders one target; throws std::invalid_argument for an unknown target.
std::filesystem::path cmd_render(const ExperimentConfig& config, const RenderRequest& request,
                                 const std::filesystem::path& out_dir);

/// Renders every outputs.svg entry, taking the target from the file name.
void cmd_render_all(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

struct MetricsRequest {
  std::optional<std::filesystem::path> graph;  // edge-list JSON; else built from the config
  Family family = Family::FMN;
  std::optional<double> r;
  std::optional<std::filesystem::path> dump_graph;
};

/// Prints one graph's report as JSON.
void cmd_metrics(const ExperimentConfig& config, const MetricsRequest& request,
                 const std::filesystem::path& out_dir, std::ostream& out);

/// Quick oracle comparisons; returns true if all pass.
bool cmd_selftest(std::ostream& out, std::uint64_t seed);

/// The graph of `family` at range r over the config's (moved) robots.
SpatialGraph build_family_graph(const ExperimentConfig& config, Family family, double r);

}  // namespace fmnet::cli
