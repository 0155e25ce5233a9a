#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "fmnet/cli/commands.hpp"
#include "fmnet/cli/io.hpp"

using namespace fmnet::cli;

int main(int argc, char** argv) {
  CLI::App app{"fmnet: fast multipole networks for robot swarms"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  unsigned threads = 1;
  app.add_option("--config", config_path, "Experiment config (JSON); defaults apply when omitted");
  app.add_option("--seed", seed, "Override scenario.seed");
  app.add_option("--out", out_dir, "Directory for relative output paths");
  app.add_option("--threads", threads, "Worker threads for trials")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Run the ensemble and write CSV + JSON");

  auto* render = app.add_subcommand("render", "Write SVG renderings");
  std::string what;
  std::string render_family = "FMN";
  std::optional<double> render_r;
  std::string render_file;
  render->add_option("target", what, "field, tree or graph (default: every outputs.svg entry)");
  render->add_option("--family", render_family, "Graph family for 'graph' (RGG, RD, RG, RFMN, FMN)");
  render->add_option("--r", render_r, "Range for restricted families (default r_grid.max)");
  render->add_option("--file", render_file, "Output file (default <target>.svg)");

  auto* metrics = app.add_subcommand("metrics", "Report metrics of a single graph as JSON");
  std::string graph_path, dump_path;
  std::string metrics_family = "FMN";
  std::optional<double> metrics_r;
  metrics->add_option("--graph", graph_path, "Edge-list JSON to evaluate instead of building one");
  metrics->add_option("--family", metrics_family, "Family built from the config (RGG, RD, RG, RFMN, FMN)");
  metrics->add_option("--r", metrics_r, "Range for restricted families (default r_grid.max)");
  metrics->add_option("--dump-graph", dump_path, "Also write the evaluated graph as JSON");

  auto* selftest = app.add_subcommand("selftest", "Compare the library against brute-force oracles");

  for (auto* sub : {sweep, render, metrics, selftest}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    ExperimentConfig config = config_path.empty() ? parse_config("{}") : parse_config(read_file(config_path));
    if (seed) config.seed = *seed;
    const std::filesystem::path out(out_dir);

    if (*sweep) {
      cmd_sweep(config, out, threads, std::cerr);
    } else if (*render) {
      if (what.empty()) {
        if (config.outputs.svg.empty()) throw std::invalid_argument("no render target given and outputs.svg is empty");
        cmd_render_all(config, out, std::cerr);
      } else {
        RenderRequest req;
        req.what = what;
        req.family = fmnet::family_from_string(render_family);
        req.r = render_r;
        if (!render_file.empty()) req.file = render_file;
        const auto written = cmd_render(config, req, out);
        std::cerr << "wrote " << written.string() << '\n';
      }
    } else if (*metrics) {
      MetricsRequest req;
      if (!graph_path.empty()) req.graph = graph_path;
      req.family = fmnet::family_from_string(metrics_family);
      req.r = metrics_r;
      if (!dump_path.empty()) req.dump_graph = dump_path;
      cmd_metrics(config, req, out, std::cout);
    } else if (*selftest) {
      return cmd_selftest(std::cout, config.seed) ? kOk : kSelftestFailed;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
