#include "fmnet/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <numbers>

namespace fmnet::cli {

using nlohmann::json;

std::vector<double> RGrid::values() const {
  std::vector<double> out;
  if (count == 1) return {min};
  for (int i = 0; i < count; ++i) {
    out.push_back(i == count - 1 ? max : min + (max - min) * i / (count - 1));
  }
  return out;
}

double expected_threshold(std::size_t n, const Box& box) {
  const double m = static_cast<double>(std::max<std::size_t>(n, 2));
  return std::sqrt(box.side() * box.side() * std::log(m) / (std::numbers::pi * m));
}

RGrid default_r_grid(std::size_t n, const Box& box) {
  const double r = expected_threshold(n, box);
  return {0.5 * r, 2.0 * r, 20};
}

namespace {

// Walks one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

  const json* get(std::string_view key) {
    seen_.emplace_back(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(std::string_view key, double& out) {
    if (auto* v = get(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "expected a number");
      out = v->get<double>();
    }
  }

  template <class Int>
  void integer(std::string_view key, Int& out) {
    if (auto* v = get(key)) {
      if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (!v->is_number_unsigned()) throw ConfigError(field(key), "must not be negative");
        out = v->get<Int>();
      } else {
        const auto x = v->get<std::int64_t>();
        if (x < std::numeric_limits<Int>::min() || x > std::numeric_limits<Int>::max()) {
          throw ConfigError(field(key), "out of range");
        }
        out = static_cast<Int>(x);
      }
    }
  }

  void string(std::string_view key, std::string& out) {
    if (auto* v = get(key)) {
      if (!v->is_string()) throw ConfigError(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
        throw ConfigError(field(it.key()), "unknown field");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string> seen_;
};

Vec2 read_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(path, "expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void read_scenario(const json& j, ExperimentConfig& c) {
  Reader r(j, "scenario");
  if (auto* box = r.get("box")) {
    Reader b(*box, "scenario.box");
    if (auto* center = b.get("center")) c.box.center = read_point(*center, "scenario.box.center");
    b.number("half_width", c.box.half_width);
    b.finish();
  }
  if (auto* charges = r.get("charges")) {
    if (!charges->is_array()) throw ConfigError("scenario.charges", "expected an array");
    c.charges.clear();
    for (std::size_t i = 0; i < charges->size(); ++i) {
      const std::string path = "scenario.charges[" + std::to_string(i) + "]";
      Reader q((*charges)[i], path);
      PointCharge pc;
      q.number("x", pc.position.x);
      q.number("y", pc.position.y);
      q.number("q", pc.strength);
      pc = make_charge(pc.position, pc.strength);
      std::string kind;
      q.string("kind", kind);
      if (!kind.empty()) {
        try {
          pc.kind = charge_kind_from_string(kind);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(path + ".kind", e.what());
        }
      }
      q.finish();
      c.charges.push_back(pc);
    }
  }
  r.integer("n_robots", c.n_robots);
  std::string dist(to_string(c.distribution));
  r.string("distribution", dist);
  try {
    c.distribution = robot_distribution_from_string(dist);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario.distribution", e.what());
  }
  r.number("epsilon", c.epsilon);
  r.integer("seed", c.seed);
  r.number("step", c.step);
  r.integer("steps", c.steps);
  r.finish();
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (!(c.box.half_width > 0.0) || !std::isfinite(c.box.half_width)) {
    throw ConfigError("scenario.box.half_width", "must be positive");
  }
  for (std::size_t i = 0; i < c.charges.size(); ++i) {
    const std::string path = "scenario.charges[" + std::to_string(i) + "]";
    if (!c.box.contains_closed(c.charges[i].position)) throw ConfigError(path, "lies outside the box");
    try {
      validate(c.charges[i]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path + ".kind", e.what());
    }
  }
  if (!(c.epsilon > 0.0 && c.epsilon <= 0.1)) throw ConfigError("scenario.epsilon", "must lie in (0, 0.1]");
  if (!(c.step > 0.0)) throw ConfigError("scenario.step", "must be positive");
  if (c.steps < 0) throw ConfigError("scenario.steps", "must not be negative");
  if (c.trials < 1) throw ConfigError("trials", "must be at least 1");
  if (!(c.r_grid.min > 0.0)) throw ConfigError("r_grid.min", "must be positive");
  if (!(c.r_grid.max >= c.r_grid.min)) throw ConfigError("r_grid.max", "must not be below r_grid.min");
  if (c.r_grid.count < 1) throw ConfigError("r_grid.count", "must be at least 1");
  if (c.families.empty()) throw ConfigError("families", "must not be empty");
  for (std::size_t i = 0; i < c.families.size(); ++i) {
    if (c.families[i] == Family::FMN) throw ConfigError("families[" + std::to_string(i) + "]", "must be one of RGG, RD, RG, RFMN");
    if (std::find(c.families.begin(), c.families.begin() + static_cast<std::ptrdiff_t>(i), c.families[i]) !=
        c.families.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw ConfigError("families[" + std::to_string(i) + "]", "duplicate family");
    }
  }
  if (c.leaf_capacity < 1) throw ConfigError("tree.leaf_capacity", "must be at least 1");
  if (c.max_depth < 1) throw ConfigError("tree.max_depth", "must be at least 1");
  if (c.outputs.csv.empty()) throw ConfigError("outputs.csv", "must not be empty");
  if (c.outputs.json.empty()) throw ConfigError("outputs.json", "must not be empty");
  for (std::size_t i = 0; i < c.outputs.svg.size(); ++i) {
    const auto stem = std::filesystem::path(c.outputs.svg[i]).stem().string();
    if (!stem.starts_with("field") && !stem.starts_with("tree") && !stem.starts_with("graph")) {
      throw ConfigError("outputs.svg[" + std::to_string(i) + "]", "file name must start with field, tree or graph");
    }
  }
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  ExperimentConfig c;
  Reader r(j, "");
  if (auto* s = r.get("scenario")) read_scenario(*s, c);
  r.integer("trials", c.trials);

  c.r_grid = default_r_grid(c.n_robots, c.box);
  if (auto* g = r.get("r_grid")) {
    Reader gr(*g, "r_grid");
    gr.number("min", c.r_grid.min);
    gr.number("max", c.r_grid.max);
    gr.integer("count", c.r_grid.count);
    gr.finish();
  }
  if (auto* fams = r.get("families")) {
    if (!fams->is_array()) throw ConfigError("families", "expected an array");
    c.families.clear();
    for (std::size_t i = 0; i < fams->size(); ++i) {
      const auto& f = (*fams)[i];
      const std::string path = "families[" + std::to_string(i) + "]";
      if (!f.is_string()) throw ConfigError(path, "expected a string");
      try {
        c.families.push_back(family_from_string(f.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
      }
    }
  }
  if (auto* t = r.get("tree")) {
    Reader tr(*t, "tree");
    tr.integer("leaf_capacity", c.leaf_capacity);
    tr.integer("max_depth", c.max_depth);
    tr.finish();
  }
  if (auto* o = r.get("outputs")) {
    Reader orr(*o, "outputs");
    orr.string("csv", c.outputs.csv);
    orr.string("json", c.outputs.json);
    if (auto* svg = orr.get("svg")) {
      if (!svg->is_array()) throw ConfigError("outputs.svg", "expected an array");
      c.outputs.svg.clear();
      for (std::size_t i = 0; i < svg->size(); ++i) {
        if (!(*svg)[i].is_string()) throw ConfigError("outputs.svg[" + std::to_string(i) + "]", "expected a string");
        c.outputs.svg.push_back((*svg)[i].get<std::string>());
      }
    }
    orr.finish();
  }
  r.finish();
  validate(c);
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  json charges = json::array();
  for (const auto& q : c.charges) {
    charges.push_back({{"x", q.position.x}, {"y", q.position.y}, {"q", q.strength}, {"kind", to_string(q.kind)}});
  }
  json families = json::array();
  for (auto f : c.families) families.push_back(to_string(f));
  const json j = {
      {"scenario",
       {{"box", {{"center", {c.box.center.x, c.box.center.y}}, {"half_width", c.box.half_width}}},
        {"charges", charges},
        {"n_robots", c.n_robots},
        {"distribution", to_string(c.distribution)},
        {"epsilon", c.epsilon},
        {"seed", c.seed},
        {"step", c.step},
        {"steps", c.steps}}},
      {"trials", c.trials},
      {"r_grid", {{"min", c.r_grid.min}, {"max", c.r_grid.max}, {"count", c.r_grid.count}}},
      {"families", families},
      {"tree", {{"leaf_capacity", c.leaf_capacity}, {"max_depth", c.max_depth}}},
      {"outputs", {{"csv", c.outputs.csv}, {"json", c.outputs.json}, {"svg", c.outputs.svg}}},
  };
  return j.dump(2) + "\n";
}

Scenario to_scenario(const ExperimentConfig& c) {
  Scenario s;
  s.root = c.box;
  s.charges = c.charges;
  s.epsilon = c.epsilon;
  s.seed = c.seed;
  s.step = c.step;
  s.steps = c.steps;
  if (c.n_robots > 0) s.robots = sample_robots(trial_seed(c.seed, 0), c.n_robots, c.distribution, c.box);
  return s;
}

TrialConfig to_trial_config(const ExperimentConfig& c) {
  TrialConfig t;
  t.n_robots = c.n_robots;
  t.distribution = c.distribution;
  t.r_grid = c.r_grid.values();
  t.families = c.families;
  t.tree.leaf_capacity = c.leaf_capacity;
  t.tree.max_depth = c.max_depth;
  t.tree.root = c.box;
  t.ambient = to_scenario(c);
  t.ambient.robots.clear();
  return t;
}

}  // namespace fmnet::cli
