#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fmnet/dynamics.hpp"
#include "fmnet/testing/generators.hpp"

namespace fmnet {
namespace {

TEST(Rng, UnitDoubleRange) {
  EXPECT_EQ(unit_double(0), 0.0);
  EXPECT_LT(unit_double(~0ULL), 1.0);
  std::uint64_t s = 0;
  // Reference values of the published splitmix64 sequence from state 0.
  EXPECT_EQ(splitmix64(s), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(s), 0x6e789e6aa1b965f4ULL);
}

TEST(Sampling, DeterministicAndInBox) {
  const Box box{{0.5, -0.5}, 0.25, 0};
  const auto a = sample_robots(42, 500, RobotDistribution::uniform, box);
  EXPECT_EQ(a, sample_robots(42, 500, RobotDistribution::uniform, box));
  EXPECT_NE(a, sample_robots(43, 500, RobotDistribution::uniform, box));
  for (auto p : a) EXPECT_TRUE(box.contains_closed(p));
  EXPECT_THROW(sample_robots(1, 0, RobotDistribution::uniform), std::invalid_argument);
}

TEST(Sampling, UniformQuadrantCounts) {
  const std::size_t n = 100000;
  const auto pts = sample_robots(7, n, RobotDistribution::uniform);
  std::array<int, 4> count{};
  for (auto p : pts) ++count[Box::unit_root().quadrant(p)];
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (int c : count) EXPECT_NEAR(c, n / 4.0, 4 * sigma);
}

TEST(Sampling, TopBottomMix) {
  const std::size_t n = 100000;
  const auto pts = sample_robots(8, n, RobotDistribution::top_bottom_mix);
  const auto top = std::count_if(pts.begin(), pts.end(), [](Vec2 p) { return p.y >= 0; });
  EXPECT_NEAR(static_cast<double>(top), 80000.0, 4 * std::sqrt(n * 0.8 * 0.2));
  EXPECT_EQ(robot_distribution_from_string("top_bottom_mix"), RobotDistribution::top_bottom_mix);
  EXPECT_THROW(robot_distribution_from_string("gaussian"), std::invalid_argument);
}

TEST(Motion, StepTowardsGoal) {
  Scenario s;
  s.charges = {make_charge({0, 0}, -1.0)};
  s.step = 0.1;
  const std::vector<Vec2> robots{{0.5, 0}, {0, -0.3}};
  const auto m = step_motion(s, robots);
  EXPECT_NEAR(m.positions[0].x, 0.4, 1e-12);
  EXPECT_NEAR(m.positions[0].y, 0.0, 1e-12);
  EXPECT_NEAR(m.positions[1].y, -0.2, 1e-12);
  EXPECT_TRUE(m.stalled.empty());
}

TEST(Motion, AwayFromObstacleClampedToBox) {
  Scenario s;
  s.charges = {make_charge({0.9, 0.9}, 1.0)};
  s.step = 0.2;
  const std::vector<Vec2> robots{{0.95, 0.95}};
  const auto m = step_motion(s, robots);
  EXPECT_EQ(m.positions[0], (Vec2{1.0, 1.0}));
}

TEST(Motion, StallsAtSymmetricPoint) {
  Scenario s;
  s.charges = {make_charge({-0.5, 0}, 1.0), make_charge({0.5, 0}, 1.0)};
  const std::vector<Vec2> robots{{0, 0}, {0.1, 0.1}};
  const auto m = step_motion(s, robots);
  EXPECT_EQ(m.stalled, (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(m.positions[0], (Vec2{0, 0}));
}

TEST(Motion, NoChargesMeansNoMotion) {
  Scenario s;
  const std::vector<Vec2> robots{{0.1, 0.2}};
  const auto m = step_motion(s, robots);
  EXPECT_EQ(m.positions[0], robots[0]);
  EXPECT_EQ(m.stalled.size(), 1U);
}

TEST(Motion, SimulateConvergesToGoal) {
  Scenario s;
  s.charges = {make_charge({0, 0}, -1.0)};
  s.robots = sample_robots(3, 100, RobotDistribution::uniform);
  s.step = 0.01;
  s.steps = 200;
  for (auto p : simulate(s)) EXPECT_LE(norm(p), 2 * s.step);
}

TEST(Scenario, Validation) {
  Scenario s;
  s.charges = {make_charge({0, 0}, -1.0)};
  EXPECT_NO_THROW(validate(s));
  s.epsilon = 0.5;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s.epsilon = 1e-6;
  s.charges.push_back({{2.0, 0.0}, 1.0, ChargeKind::obstacle});
  EXPECT_THROW(validate(s), std::invalid_argument);
  EXPECT_NO_THROW(validate(demo_scenario()));
}

TrialConfig small_config() {
  TrialConfig cfg;
  cfg.n_robots = 120;
  cfg.r_grid = {0.1, 0.2, 0.3};
  cfg.families = {Family::RGG, Family::RD, Family::RG, Family::RFMN, Family::FMN};
  cfg.tree.leaf_capacity = 8;
  return cfg;
}

TEST(Trial, LayoutAndRejections) {
  const auto cfg = small_config();
  const auto t = run_trial(5, cfg);
  ASSERT_EQ(t.reports.size(), 15U);
  EXPECT_EQ(t.reports[4].family, Family::RD);
  EXPECT_EQ(t.reports[4].r, 0.2);
  // FMN is unrestricted, the same at every r apart from the r column.
  EXPECT_EQ(t.reports[12].edges, t.reports[14].edges);
  EXPECT_TRUE(t.reports[12].connected);
  EXPECT_GT(t.threshold, 0.0);

  auto bad = cfg;
  bad.r_grid = {0.2, 0.1};
  EXPECT_THROW(run_trial(5, bad), std::invalid_argument);
  bad.r_grid = {0.0, 0.1};
  EXPECT_THROW(run_trial(5, bad), std::invalid_argument);
  bad = cfg;
  bad.n_robots = 1;
  EXPECT_THROW(run_trial(5, bad), std::invalid_argument);
}

TEST(Trial, NestingAcrossFamilies) {
  // At every r: edges(RG) <= edges(RD) <= edges(RGG), and monotone in r.
  const auto cfg = small_config();
  const auto t = run_trial(6, cfg);
  const auto k = cfg.r_grid.size();
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_LE(t.reports[2 * k + i].edges, t.reports[k + i].edges);
    EXPECT_LE(t.reports[k + i].edges, t.reports[i].edges);
    if (i > 0) {
      EXPECT_LE(t.reports[i - 1].edges, t.reports[i].edges);
    }
  }
}

TEST(Ensemble, ThreadCountDoesNotMatter) {
  const auto cfg = small_config();
  const auto a = run_ensemble(9, 4, cfg, 1);
  const auto b = run_ensemble(9, 4, cfg, 3);
  ASSERT_EQ(a.trials.size(), 4U);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a.trials[i].seed, trial_seed(9, i));
    EXPECT_EQ(a.trials[i].reports, b.trials[i].reports);
  }
  EXPECT_EQ(a.rows, b.rows);
}

TEST(Aggregate, OrderIndependentAndSingleTrial) {
  const auto cfg = small_config();
  auto e = run_ensemble(10, 5, cfg, 1);
  auto shuffled = e.trials;
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_EQ(aggregate(shuffled), e.rows);
  ASSERT_EQ(e.rows.size(), 15U);
  EXPECT_EQ(e.rows[0].trials, 5U);
  EXPECT_EQ(e.rows[0].stats.size(), aggregate_metric_names().size());

  const auto one = aggregate(std::span(e.trials).first(1));
  for (const auto& row : one) {
    for (const auto& s : row.stats) EXPECT_EQ(s.stddev, 0.0);
  }
}

TEST(Aggregate, MeanAndPopulationStddev) {
  TrialResult a, b;
  MetricsReport ra, rb;
  ra.eff_hop = 1.0;
  rb.eff_hop = 3.0;
  a.reports = {ra};
  b.reports = {rb};
  const std::vector<TrialResult> trials{a, b};
  const auto rows = aggregate(trials);
  ASSERT_EQ(rows.size(), 1U);
  const auto names = aggregate_metric_names();
  const auto idx = std::find(names.begin(), names.end(), "eff_hop") - names.begin();
  EXPECT_DOUBLE_EQ(rows[0].stats[idx].mean, 2.0);
  EXPECT_DOUBLE_EQ(rows[0].stats[idx].stddev, 1.0);
}

TEST(TrialSeed, DistinctPerIndex) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < 1000; ++i) seeds.push_back(trial_seed(1, i));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

}  // namespace
}  // namespace fmnet
