#include "fmnet/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "fmnet/cli/io.hpp"
#include "fmnet/cli/svg.hpp"
#include "fmnet/delaunay.hpp"
#include "fmnet/fmm.hpp"
#include "fmnet/testing/generators.hpp"
#include "fmnet/testing/oracles.hpp"
#include "fmnet/topology.hpp"

namespace fmnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json report_json(const MetricsReport& rep) {
  return {{"family", to_string(rep.family)},
          {"r", rep.r},
          {"eff_hop", rep.eff_hop},
          {"eff_euclid", rep.eff_euclid},
          {"edges", rep.edges},
          {"eff_per_edge_hop", rep.eff_per_edge_hop},
          {"eff_per_edge_euclid", rep.eff_per_edge_euclid},
          {"energy_uni", rep.energy_uni},
          {"energy_omni", rep.energy_omni},
          {"eff_per_energy_hop", rep.eff_per_energy_hop},
          {"eff_per_energy_euclid", rep.eff_per_energy_euclid},
          {"eff_per_omni_energy_hop", rep.eff_per_omni_energy_hop},
          {"eff_per_omni_energy_euclid", rep.eff_per_omni_energy_euclid},
          {"connected", rep.connected},
          {"patch_edges", rep.patch_edges},
          {"degree_histogram", rep.degree_histogram}};
}

}  // namespace

void cmd_sweep(const ExperimentConfig& config, const fs::path& out_dir, unsigned threads, std::ostream& log) {
  validate(config);
  if (config.n_robots < 2) throw ConfigError("scenario.n_robots", "sweep needs at least 2 robots");
  const auto trial_cfg = to_trial_config(config);
  const auto result =
      run_ensemble(config.seed, static_cast<std::size_t>(config.trials), trial_cfg, std::max(threads, 1U));

  std::string csv(csv_header());
  csv += '\n';
  for (const auto& t : result.trials) {
    for (const auto& rep : t.reports) {
      csv += to_csv_row(rep);
      csv += '\n';
    }
  }

  json rows = json::array();
  const auto names = aggregate_metric_names();
  for (const auto& row : result.rows) {
    json metrics = json::object();
    for (std::size_t m = 0; m < names.size(); ++m) {
      metrics[std::string(names[m])] = {{"mean", row.stats[m].mean}, {"stddev", row.stats[m].stddev}};
    }
    rows.push_back({{"family", to_string(row.family)}, {"r", row.r}, {"trials", row.trials}, {"metrics", metrics}});
  }
  json thresholds = json::array();
  json seeds = json::array();
  for (const auto& t : result.trials) {
    thresholds.push_back(t.threshold);
    seeds.push_back(t.seed);
  }
  const json doc = {{"config", json::parse(serialize_config(config))},
                    {"trial_seeds", seeds},
                    {"connectivity_thresholds", thresholds},
                    {"aggregate", rows}};

  const auto csv_path = resolve(out_dir, config.outputs.csv);
  const auto json_path = resolve(out_dir, config.outputs.json);
  write_file_atomic(csv_path, csv);
  write_file_atomic(json_path, doc.dump(2) + "\n");
  log << "wrote " << csv_path.string() << " (" << result.trials.size() * result.trials.front().reports.size()
      << " rows) and " << json_path.string() << '\n';
}

SpatialGraph build_family_graph(const ExperimentConfig& config, Family family, double r) {
  const auto trial_cfg = to_trial_config(config);
  const auto pos = config.n_robots > 0 ? trial_positions(trial_seed(config.seed, 0), trial_cfg) : std::vector<Vec2>{};
  switch (family) {
    case Family::RGG: return rgg(pos, r);
    case Family::RD: return restrict(delaunay(pos), r);
    case Family::RG: return restrict(gabriel(pos), r);
    case Family::RFMN:
    case Family::FMN: {
      auto g = fmn(QuadTree::build(pos, trial_cfg.tree), pos);
      return family == Family::FMN ? g : restrict(g, r);
    }
  }
  return SpatialGraph(pos);
}

fs::path cmd_render(const ExperimentConfig& config, const RenderRequest& req, const fs::path& out_dir) {
  validate(config);
  const fs::path path = req.file ? resolve(out_dir, req.file->string()) : out_dir / (req.what + ".svg");
  std::string svg;
  if (req.what == "field") {
    const auto scen = to_scenario(config);
    std::vector<FieldSample> field;
    if (!scen.charges.empty() && !scen.robots.empty()) {
      TreeOptions opts;
      opts.root = scen.root;
      field = evaluate(scen.charges, scen.robots, scen.epsilon, opts);
    }
    svg = render_field(config.box, scen.charges, scen.robots, field);
  } else if (req.what == "tree") {
    const auto trial_cfg = to_trial_config(config);
    const auto pos =
        config.n_robots > 0 ? trial_positions(trial_seed(config.seed, 0), trial_cfg) : std::vector<Vec2>{};
    svg = render_tree(QuadTree::build(pos, trial_cfg.tree));
  } else if (req.what == "graph") {
    const auto g = build_family_graph(config, req.family, req.r.value_or(config.r_grid.max));
    svg = render_graph(config.box, g, betweenness(g));
  } else {
    throw std::invalid_argument("unknown render target '" + req.what + "' (expected field, tree or graph)");
  }
  write_file_atomic(path, svg);
  return path;
}

void cmd_render_all(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& log) {
  for (const auto& file : config.outputs.svg) {
    const auto stem = fs::path(file).stem().string();
    RenderRequest req;
    req.what = stem.starts_with("field") ? "field" : stem.starts_with("tree") ? "tree" : "graph";
    req.file = file;
    const auto written = cmd_render(config, req, out_dir);
    log << "wrote " << written.string() << '\n';
  }
}

void cmd_metrics(const ExperimentConfig& config, const MetricsRequest& req, const fs::path& out_dir,
                 std::ostream& out) {
  SpatialGraph g;
  Family family = req.family;
  double r = req.r.value_or(config.r_grid.max);
  if (req.graph) {
    g = graph_from_json(read_file(*req.graph));
  } else {
    validate(config);
    g = build_family_graph(config, family, r);
  }
  if (req.dump_graph) write_file_atomic(resolve(out_dir, req.dump_graph->string()), to_json(g, 2) + "\n");
  json doc = report_json(make_report(family, r, g));
  doc["vertices"] = g.vertex_count();
  if (req.graph) {
    doc.erase("family");
    doc.erase("r");
  }
  const auto b = betweenness(g);
  doc["betweenness_max"] = b.empty() ? 0.0 : *std::max_element(b.begin(), b.end());
  out << doc.dump(2) << '\n';
}

bool cmd_selftest(std::ostream& out, std::uint64_t seed) {
  using namespace fmnet::testing;
  Gen gen(seed);
  bool all = true;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    all = all && ok;
  };

  {
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      const auto charges = gen.charges(gen.range(1, 200));
      const auto targets = gen.uniform_points(gen.range(1, 200));
      const auto fast = evaluate(charges, targets, 1e-6);
      const auto ref = direct_field(charges, targets);
      double scale = 0.0, err = 0.0;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        scale = std::max(scale, std::abs(ref[i].potential));
        err = std::max(err, std::abs(fast[i].potential - ref[i].potential));
      }
      worst = std::max(worst, err / std::max(scale, 1e-300));
    }
    std::ostringstream d;
    d << "fmm vs direct, worst relative error " << worst << " at eps 1e-6";
    report("fmm", worst <= 1e-6, d.str());
  }
  {
    int bad = 0;
    for (int c = 0; c < 20; ++c) {
      const auto pts = gen.uniform_points(gen.range(3, 40));
      if (delaunay(pts).edge_pairs() != brute_delaunay(pts)) ++bad;
      if (gabriel(pts).edge_pairs() != brute_gabriel(pts)) ++bad;
    }
    report("delaunay+gabriel", bad == 0, std::to_string(bad) + " mismatches in 40 comparisons");
  }
  {
    int bad = 0;
    for (int c = 0; c < 20; ++c) {
      const auto g = gen.random_graph(gen.range(2, 14), gen.uniform(0.1, 0.6));
      const auto fast = betweenness(g);
      const auto ref = enumerated_betweenness(g);
      for (std::size_t v = 0; v < fast.size(); ++v) bad += std::abs(fast[v] - ref[v]) > 1e-9 ? 1 : 0;
      for (auto m : {PathMetric::hop, PathMetric::euclidean}) {
        bad += std::abs(efficiency(g, m) - floyd_efficiency(g, m)) > 1e-12 * std::max(1.0, floyd_efficiency(g, m)) ? 1 : 0;
      }
    }
    report("metrics", bad == 0, std::to_string(bad) + " mismatches vs brute force");
  }
  {
    int bad = 0;
    for (int c = 0; c < 10; ++c) {
      const auto pts = gen.uniform_points(gen.range(2, 300));
      const auto cap = gen.range(1, 30);
      const auto g = fmn(build_tree(pts, cap), pts);
      if (g.edges().size() != reference_fmn(pts, cap, 20, Box::unit_root()).edges().size() ||
          g.edge_pairs() != reference_fmn(pts, cap, 20, Box::unit_root()).edge_pairs() || !is_connected(g)) {
        ++bad;
      }
      if (connectivity_threshold(pts) != kruskal_threshold(pts)) ++bad;
    }
    report("fmn+threshold", bad == 0, std::to_string(bad) + " mismatches vs reference");
  }
  return all;
}

}  // namespace fmnet::cli
