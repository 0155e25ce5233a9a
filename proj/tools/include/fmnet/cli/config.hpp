#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fmnet/dynamics.hpp"

namespace fmnet::cli {

/// Validation failure; field() is the dotted path of the offending entry,
/// e.g. "r_grid.min" or "scenario.charges[2].q".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RGrid {
  double min = 0.0;
  double max = 0.0;
  int count = 20;

  std::vector<double> values() const;
  friend bool operator==(const RGrid&, const RGrid&) = default;
};

struct Outputs {
  std::string csv = "sweep.csv";
  std::string json = "sweep.json";
  /// Render targets; each file name must start with field, tree or graph.
  std::vector<std::string> svg;

  friend bool operator==(const Outputs&, const Outputs&) = default;
};

struct ExperimentConfig {
  Box box = Box::unit_root();
  std::vector<PointCharge> charges;
  std::size_t n_robots = 1000;
  RobotDistribution distribution = RobotDistribution::uniform;
  double epsilon = 1e-6;
  std::uint64_t seed = 1;
  double step = 0.01;
  int steps = 0;

  int trials = 100;
  RGrid r_grid;
  std::vector<Family> families{Family::RGG, Family::RD, Family::RG, Family::RFMN};
  std::size_t leaf_capacity = 30;
  int max_depth = 20;
  Outputs outputs;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// sqrt(A ln n / (pi n)) for n uniform points in a box of area A.
double expected_threshold(std::size_t n, const Box& box);

/// 20 points over [0.5, 2] x expected_threshold.
RGrid default_r_grid(std::size_t n, const Box& box);

/// Parses and validates; absent fields take their defaults. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text);

/// Complete JSON document (every field written out).
std::string serialize_config(const ExperimentConfig& config);

/// Re-checks every invariant; throws ConfigError.
void validate(const ExperimentConfig& config);

Scenario to_scenario(const ExperimentConfig& config);
TrialConfig to_trial_config(const ExperimentConfig& config);

}  // namespace fmnet::cli
