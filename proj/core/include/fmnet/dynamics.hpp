#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fmnet/charges.hpp"
#include "fmnet/metrics.hpp"
#include "fmnet/quadtree.hpp"

namespace fmnet {

struct Scenario {
  Box root = Box::unit_root();
  std::vector<PointCharge> charges;
  std::vector<Vec2> robots;
  double epsilon = 1e-6;
  std::uint64_t seed = 1;
  double step = 0.01;
  int steps = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws std::invalid_argument naming the offending item.
void validate(const Scenario& scenario);

enum class RobotDistribution { uniform, top_bottom_mix };

std::string_view to_string(RobotDistribution d) noexcept;
RobotDistribution robot_distribution_from_string(std::string_view name);

/// Uniform [0, 1) from the top 53 bits of a 64-bit draw.
double unit_double(std::uint64_t bits) noexcept;

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// n points in `root`. top_bottom_mix puts each point in the top half with
/// probability 4/5. Bit-identical across platforms for a given seed.
std::vector<Vec2> sample_robots(std::uint64_t seed, std::size_t n, RobotDistribution distribution,
                                const Box& root = Box::unit_root());

/// Indices of robots whose gradient norm fell below this stay put.
inline constexpr double kStallGradient = 1e-12;

struct MotionStep {
  std::vector<Vec2> positions;
  std::vector<std::uint32_t> stalled;
};

/// One normalised gradient-descent step x <- clamp(x - step * grad/|grad|)
/// under the scenario's charges. The robots themselves carry no charge.
MotionStep step_motion(const Scenario& scenario, std::span<const Vec2> robots);

/// Runs scenario.steps steps from scenario.robots.
std::vector<Vec2> simulate(const Scenario& scenario);

/// The non-normative demo layout: goals and obstacles in [-1, 1]^2 with
/// mixed magnitudes, and 1000 robots sampled top-heavy.
Scenario demo_scenario(std::uint64_t seed = 1);

struct TrialConfig {
  std::size_t n_robots = 1000;
  RobotDistribution distribution = RobotDistribution::uniform;
  std::vector<double> r_grid;
  std::vector<Family> families{Family::RGG, Family::RD, Family::RG, Family::RFMN};
  TreeOptions tree;
  /// Ambient charges, step and steps used to move the robots before the
  /// networks are built. With no charges or no steps the robots stay put.
  Scenario ambient;
};

struct TrialResult {
  std::uint64_t seed = 0;
  double threshold = 0.0;
  /// Family-major: reports[f * r_grid.size() + i] is families[f] at r_grid[i].
  std::vector<MetricsReport> reports;
};

/// Robot positions a trial builds its networks over: sampled, then moved
/// under the ambient charges.
std::vector<Vec2> trial_positions(std::uint64_t seed, const TrialConfig& config);

/// Samples robots, builds the tree over the robots alone and every requested
/// family at every r. Throws std::invalid_argument for an unsorted or
/// non-positive grid, or fewer than 2 robots.
TrialResult run_trial(std::uint64_t seed, const TrialConfig& config);

/// Seed of trial `index` under `base_seed`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index) noexcept;

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population

  friend bool operator==(const MetricStats&, const MetricStats&) = default;
};

/// Names of the aggregated per-report quantities, in MetricStats order.
std::span<const std::string_view> aggregate_metric_names() noexcept;

struct AggregateRow {
  Family family = Family::RGG;
  double r = 0.0;
  std::size_t trials = 0;
  std::vector<MetricStats> stats;  // indexed like aggregate_metric_names()

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

/// Mean and spread per (family, r). Values are sorted before summation so the
/// result does not depend on trial order.
std::vector<AggregateRow> aggregate(std::span<const TrialResult> trials);

struct EnsembleResult {
  std::vector<TrialResult> trials;  // in trial index order
  std::vector<AggregateRow> rows;
};

/// `trials` independent trials on up to `threads` worker threads. The result
/// does not depend on the thread count.
EnsembleResult run_ensemble(std::uint64_t base_seed, std::size_t trials, const TrialConfig& config,
                            unsigned threads = 1);

}  // namespace fmnet
