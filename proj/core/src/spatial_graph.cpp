#include "fmnet/spatial_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fmnet {

std::string_view to_string(EdgeLabel label) noexcept {
  switch (label) {
    case EdgeLabel::intra_leaf: return "intra-leaf";
    case EdgeLabel::adjacent_leaf: return "adjacent-leaf";
    case EdgeLabel::isolation_patch: return "isolation-patch";
    case EdgeLabel::component_patch: return "component-patch";
    case EdgeLabel::plain: return "plain";
  }
  return "plain";
}

EdgeLabel edge_label_from_string(std::string_view name) {
  for (auto l : {EdgeLabel::intra_leaf, EdgeLabel::adjacent_leaf, EdgeLabel::isolation_patch,
                 EdgeLabel::component_patch, EdgeLabel::plain}) {
    if (to_string(l) == name) return l;
  }
  throw std::invalid_argument("unknown edge label '" + std::string(name) + "'");
}

bool SpatialGraph::add_edge(std::size_t u, std::size_t v, EdgeLabel label) {
  if (u >= positions_.size() || v >= positions_.size()) {
    throw std::logic_error("edge endpoint out of range");
  }
  if (u == v) throw std::logic_error("self-loop at vertex " + std::to_string(u));
  const auto a = static_cast<std::uint32_t>(std::min(u, v));
  const auto b = static_cast<std::uint32_t>(std::max(u, v));
  if (!keys_.insert(key(a, b)).second) return false;
  edges_.push_back({a, b, distance(positions_[a], positions_[b]), label});
  return true;
}

bool SpatialGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u == v || u >= positions_.size() || v >= positions_.size()) return false;
  return keys_.contains(key(static_cast<std::uint32_t>(std::min(u, v)),
                            static_cast<std::uint32_t>(std::max(u, v))));
}

std::vector<std::size_t> SpatialGraph::degrees() const {
  std::vector<std::size_t> d(positions_.size(), 0);
  for (const auto& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

void SpatialGraph::sort_edges() {
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> SpatialGraph::edge_pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.emplace_back(e.u, e.v);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SpatialGraph::count_label(EdgeLabel label) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [label](const Edge& e) { return e.label == label; }));
}

Adjacency::Adjacency(const SpatialGraph& g) {
  const auto n = g.vertex_count();
  offsets.assign(n + 1, 0);
  for (const auto& e : g.edges()) {
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  neighbors.resize(2 * g.edge_count());
  lengths.resize(2 * g.edge_count());
  auto cursor = offsets;
  for (const auto& e : g.edges()) {
    neighbors[cursor[e.u]] = e.v;
    lengths[cursor[e.u]++] = e.length;
    neighbors[cursor[e.v]] = e.u;
    lengths[cursor[e.v]++] = e.length;
  }
}

std::vector<std::uint32_t> connected_components(const SpatialGraph& g) {
  const auto n = g.vertex_count();
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(n, kUnset);
  const Adjacency adj(g);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(static_cast<std::uint32_t>(s));
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i) {
        const auto w = adj.neighbors[i];
        if (comp[w] == kUnset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::size_t component_count(const SpatialGraph& g) {
  const auto comp = connected_components(g);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

bool is_connected(const SpatialGraph& g) { return component_count(g) <= 1; }

std::string to_json(const SpatialGraph& g, int indent) {
  nlohmann::json doc;
  doc["n"] = g.vertex_count();
  auto& pos = doc["positions"] = nlohmann::json::array();
  for (const auto& p : g.positions()) pos.push_back({p.x, p.y});
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"u", e.u}, {"v", e.v}, {"len", e.length}, {"label", std::string(to_string(e.label))}});
  }
  return doc.dump(indent);
}

SpatialGraph graph_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto& pos = doc.at("positions");
    if (pos.size() != n) throw std::invalid_argument("graph JSON: positions has wrong length");
    std::vector<Vec2> positions;
    positions.reserve(n);
    for (const auto& p : pos) {
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument("graph JSON: bad position");
      positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    SpatialGraph g(std::move(positions));
    for (const auto& e : doc.at("edges")) {
      const auto u = e.at("u").get<std::size_t>();
      const auto v = e.at("v").get<std::size_t>();
      if (u >= n || v >= n || u == v) throw std::invalid_argument("graph JSON: bad edge endpoints");
      const auto label = e.contains("label") ? edge_label_from_string(e["label"].get<std::string>())
                                             : EdgeLabel::plain;
      if (!g.add_edge(u, v, label)) throw std::invalid_argument("graph JSON: duplicate edge");
      if (e.contains("len")) {
        const double stored = e["len"].get<double>();
        const double actual = g.edges().back().length;
        if (std::abs(stored - actual) > 1e-9 * std::max(1.0, actual)) {
          throw std::invalid_argument("graph JSON: edge length disagrees with positions");
        }
      }
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
}

}  // namespace fmnet
