#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fmnet/geometry.hpp"

namespace fmnet {

/// Edge provenance. The first three are the FMN rules (drawn blue, cyan and
/// red); component_patch marks connectivity repairs; plain is everything else.
enum class EdgeLabel { intra_leaf, adjacent_leaf, isolation_patch, component_patch, plain };

std::string_view to_string(EdgeLabel label) noexcept;
EdgeLabel edge_label_from_string(std::string_view name);

struct Edge {
  std::uint32_t u = 0;  // u < v
  std::uint32_t v = 0;
  double length = 0.0;
  EdgeLabel label = EdgeLabel::plain;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with vertices at points in the plane.
class SpatialGraph {
 public:
  SpatialGraph() = default;
  explicit SpatialGraph(std::vector<Vec2> positions) : positions_(std::move(positions)) {}

  std::size_t vertex_count() const noexcept { return positions_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Vec2> positions() const noexcept { return positions_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Adds {u, v} with its Euclidean length. Returns false if the edge is
  /// already present. Self-loops and out-of-range indices throw
  /// std::logic_error.
  bool add_edge(std::size_t u, std::size_t v, EdgeLabel label);

  bool has_edge(std::size_t u, std::size_t v) const;

  std::vector<std::size_t> degrees() const;

  /// Sorts edges by (u, v).
  void sort_edges();

  /// Edge keys as a sorted list, handy for set comparisons.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_pairs() const;

  std::size_t count_label(EdgeLabel label) const;

 private:
  static std::uint64_t key(std::uint32_t u, std::uint32_t v) noexcept {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  std::vector<Vec2> positions_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> keys_;
};

/// Compressed adjacency for traversal; neighbours are listed in edge order.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> neighbors;
  std::vector<double> lengths;

  explicit Adjacency(const SpatialGraph& g);

  std::size_t degree(std::size_t v) const { return offsets[v + 1] - offsets[v]; }
};

/// Component id per vertex, numbered in order of lowest member.
std::vector<std::uint32_t> connected_components(const SpatialGraph& g);
std::size_t component_count(const SpatialGraph& g);
bool is_connected(const SpatialGraph& g);

/// Edge-list JSON document:
///   {"n": int, "positions": [[x, y], ...],
///    "edges": [{"u": i, "v": j, "len": d, "label": s}, ...]}
std::string to_json(const SpatialGraph& g, int indent = -1);

/// Parses the edge-list document. Lengths are recomputed from positions and a
/// stored "len" that disagrees throws std::invalid_argument, as do malformed
/// documents.
SpatialGraph graph_from_json(std::string_view text);

}  // namespace fmnet
