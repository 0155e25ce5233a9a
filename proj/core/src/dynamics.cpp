#include "fmnet/dynamics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "fmnet/fmm.hpp"
#include "fmnet/topology.hpp"

namespace fmnet {

void validate(const Scenario& s) {
  if (!(s.root.half_width > 0.0)) throw std::invalid_argument("root box must have positive size");
  if (!(s.epsilon > 0.0 && s.epsilon <= 0.1)) throw std::invalid_argument("epsilon must lie in (0, 0.1]");
  if (!(s.step > 0.0)) throw std::invalid_argument("step must be positive");
  if (s.steps < 0) throw std::invalid_argument("steps must be non-negative");
  for (std::size_t i = 0; i < s.charges.size(); ++i) {
    validate(s.charges[i]);
    if (!s.root.contains_closed(s.charges[i].position)) {
      throw std::invalid_argument("charge " + std::to_string(i) + " lies outside the root box");
    }
  }
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    if (!s.root.contains_closed(s.robots[i])) {
      throw std::invalid_argument("robot " + std::to_string(i) + " lies outside the root box");
    }
  }
}

std::string_view to_string(RobotDistribution d) noexcept {
  return d == RobotDistribution::uniform ? "uniform" : "top_bottom_mix";
}

RobotDistribution robot_distribution_from_string(std::string_view name) {
  if (name == "uniform") return RobotDistribution::uniform;
  if (name == "top_bottom_mix") return RobotDistribution::top_bottom_mix;
  throw std::invalid_argument("unknown robot distribution '" + std::string(name) + "'");
}

double unit_double(std::uint64_t bits) noexcept { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Vec2> sample_robots(std::uint64_t seed, std::size_t n, RobotDistribution distribution,
                                const Box& root) {
  if (n < 1) throw std::invalid_argument("sample_robots: n must be at least 1");
  // splitmix64 rather than a std:: engine + distribution: the standard
  // distributions are not specified bit-for-bit across library vendors.
  std::uint64_t state = seed;
  std::vector<Vec2> out(n);
  const double side = root.side();
  for (auto& p : out) {
    const double u = unit_double(splitmix64(state));
    double v = unit_double(splitmix64(state));
    if (distribution == RobotDistribution::top_bottom_mix) {
      const bool top = unit_double(splitmix64(state)) < 0.8;
      v = 0.5 * v + (top ? 0.5 : 0.0);
    }
    p = {root.x0() + side * u, root.y0() + side * v};
  }
  return out;
}

MotionStep step_motion(const Scenario& scenario, std::span<const Vec2> robots) {
  MotionStep out;
  out.positions.assign(robots.begin(), robots.end());
  if (robots.empty()) return out;
  std::vector<FieldSample> field;
  if (scenario.charges.empty()) {
    field.assign(robots.size(), FieldSample{});
  } else {
    TreeOptions opts;
    opts.root = scenario.root;
    field = evaluate(scenario.charges, robots, scenario.epsilon, opts);
  }
  const Box& b = scenario.root;
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const Vec2 g = field[i].gradient;
    const double len = norm(g);
    if (!(len >= kStallGradient)) {
      out.stalled.push_back(static_cast<std::uint32_t>(i));
      continue;
    }
    Vec2 x = robots[i] - (scenario.step / len) * g;
    x.x = std::clamp(x.x, b.x0(), b.x1());
    x.y = std::clamp(x.y, b.y0(), b.y1());
    out.positions[i] = x;
  }
  return out;
}

std::vector<Vec2> simulate(const Scenario& scenario) {
  std::vector<Vec2> pos = scenario.robots;
  for (int s = 0; s < scenario.steps; ++s) pos = step_motion(scenario, pos).positions;
  return pos;
}

Scenario demo_scenario(std::uint64_t seed) {
  Scenario s;
  s.seed = seed;
  s.charges = {
      make_charge({-0.55, 0.6}, -3.0),  make_charge({0.5, 0.7}, -1.5),  make_charge({0.1, -0.6}, -1.0),
      make_charge({-0.1, 0.3}, 1.2),    make_charge({0.35, 0.1}, 0.8),  make_charge({-0.6, -0.2}, 0.5),
      make_charge({0.75, -0.35}, 1.0),  make_charge({-0.3, -0.75}, 0.3),
  };
  s.robots = sample_robots(seed, 1000, RobotDistribution::top_bottom_mix, s.root);
  return s;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index) noexcept {
  std::uint64_t state = base_seed ^ (0xd1b54a32d192ed03ULL * (static_cast<std::uint64_t>(index) + 1));
  return splitmix64(state);
}

std::vector<Vec2> trial_positions(std::uint64_t seed, const TrialConfig& config) {
  Scenario scen = config.ambient;
  scen.robots = sample_robots(seed, config.n_robots, config.distribution, scen.root);
  return scen.charges.empty() ? scen.robots : simulate(scen);
}

TrialResult run_trial(std::uint64_t seed, const TrialConfig& config) {
  const auto& grid = config.r_grid;
  if (config.n_robots < 2) throw std::invalid_argument("run_trial: at least 2 robots are needed");
  if (grid.empty()) throw std::invalid_argument("run_trial: r_grid is empty");
  if (!(grid.front() > 0.0)) throw std::invalid_argument("run_trial: r_grid values must be positive");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("run_trial: r_grid must be sorted");

  const std::vector<Vec2> pos = trial_positions(seed, config);
  const Box& root = config.ambient.root;

  TrialResult out;
  out.seed = seed;
  out.threshold = connectivity_threshold(pos);

  auto has = [&](Family f) {
    return std::find(config.families.begin(), config.families.end(), f) != config.families.end();
  };
  SpatialGraph rgg_max, del, gab, net;
  if (has(Family::RGG)) rgg_max = rgg(pos, grid.back());
  if (has(Family::RD)) del = delaunay(pos);
  if (has(Family::RG)) gab = gabriel(pos);
  if (has(Family::RFMN) || has(Family::FMN)) {
    TreeOptions opts = config.tree;
    opts.root = root;
    net = fmn(QuadTree::build(pos, opts), pos);
  }

  out.reports.reserve(config.families.size() * grid.size());
  for (auto family : config.families) {
    const SpatialGraph* base = nullptr;
    switch (family) {
      case Family::RGG: base = &rgg_max; break;
      case Family::RD: base = &del; break;
      case Family::RG: base = &gab; break;
      case Family::RFMN:
      case Family::FMN: base = &net; break;
    }
    if (family == Family::FMN) {
      const auto rep = make_report(family, grid.front(), net);
      for (double r : grid) {
        out.reports.push_back(rep);
        out.reports.back().r = r;
      }
      continue;
    }
    for (double r : grid) out.reports.push_back(make_report(family, r, restrict(*base, r)));
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 13> kMetricNames{
    "eff_hop",           "eff_euclid",          "edges",
    "eff_per_edge_hop",  "eff_per_edge_euclid", "energy_uni",
    "energy_omni",       "eff_per_energy_hop",  "eff_per_energy_euclid",
    "eff_per_omni_energy_hop", "eff_per_omni_energy_euclid", "connected",
    "patch_edges"};

std::array<double, kMetricNames.size()> metric_values(const MetricsReport& r) {
  return {r.eff_hop,
          r.eff_euclid,
          static_cast<double>(r.edges),
          r.eff_per_edge_hop,
          r.eff_per_edge_euclid,
          r.energy_uni,
          r.energy_omni,
          r.eff_per_energy_hop,
          r.eff_per_energy_euclid,
          r.eff_per_omni_energy_hop,
          r.eff_per_omni_energy_euclid,
          r.connected ? 1.0 : 0.0,
          static_cast<double>(r.patch_edges)};
}

MetricStats stats_of(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / n)};
}

}  // namespace

std::span<const std::string_view> aggregate_metric_names() noexcept { return kMetricNames; }

std::vector<AggregateRow> aggregate(std::span<const TrialResult> trials) {
  std::vector<AggregateRow> rows;
  if (trials.empty()) return rows;
  const auto& first = trials.front().reports;
  for (const auto& t : trials) {
    if (t.reports.size() != first.size()) throw std::invalid_argument("aggregate: trials differ in shape");
  }
  std::vector<double> values(trials.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    AggregateRow row;
    row.family = first[k].family;
    row.r = first[k].r;
    row.trials = trials.size();
    for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
      for (std::size_t t = 0; t < trials.size(); ++t) values[t] = metric_values(trials[t].reports[k])[m];
      row.stats.push_back(stats_of(values));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

EnsembleResult run_ensemble(std::uint64_t base_seed, std::size_t trials, const TrialConfig& config,
                            unsigned threads) {
  if (trials < 1) throw std::invalid_argument("run_ensemble: trials must be at least 1");
  EnsembleResult out;
  out.trials.resize(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= trials || failed.load()) return;
      try {
        out.trials[i] = run_trial(trial_seed(base_seed, i), config);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const auto count = std::clamp<std::size_t>(threads, 1, trials);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  out.rows = aggregate(out.trials);
  return out;
}

}  // namespace fmnet
