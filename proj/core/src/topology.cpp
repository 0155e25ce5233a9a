#include "fmnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fmnet/delaunay.hpp"

namespace fmnet {
namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }

  std::vector<std::size_t> parent;
};

// Closest pair (i in a, j in b); ties go to the lexicographically lowest
// (min, max) index pair.
std::pair<std::uint32_t, std::uint32_t> closest_cross_pair(std::span<const std::uint32_t> a,
                                                           std::span<const std::uint32_t> b,
                                                           std::span<const Vec2> pts) {
  double best = std::numeric_limits<double>::infinity();
  std::pair<std::uint32_t, std::uint32_t> best_pair{0, 0};
  for (auto i : a) {
    for (auto j : b) {
      const double d2 = norm2(pts[i] - pts[j]);
      const std::pair<std::uint32_t, std::uint32_t> key{std::min(i, j), std::max(i, j)};
      if (d2 < best || (d2 == best && key < best_pair)) {
        best = d2;
        best_pair = key;
      }
    }
  }
  return best_pair;
}

std::size_t nearest_neighbor(std::size_t v, std::span<const Vec2> pts) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = v;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == v) continue;
    const double d2 = norm2(pts[j] - pts[v]);
    if (d2 < best) {
      best = d2;
      arg = j;
    }
  }
  return arg;
}

void patch_components(SpatialGraph& g) {
  const auto pts = g.positions();
  const auto n = pts.size();
  DisjointSets sets(n);
  for (const auto& e : g.edges()) sets.unite(e.u, e.v);
  std::size_t components = 0;
  for (std::size_t i = 0; i < n; ++i) components += sets.find(i) == i ? 1 : 0;

  std::vector<std::size_t> root(n);
  while (components > 1) {
    for (std::size_t i = 0; i < n; ++i) root[i] = sets.find(i);
    double best = std::numeric_limits<double>::infinity();
    std::size_t bu = 0, bv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (root[i] == root[j]) continue;
        const double d2 = norm2(pts[i] - pts[j]);
        if (d2 < best) {
          best = d2;
          bu = i;
          bv = j;
        }
      }
    }
    g.add_edge(bu, bv, EdgeLabel::component_patch);
    sets.unite(bu, bv);
    --components;
  }
}

}  // namespace

SpatialGraph fmn(const QuadTree& tree, std::span<const Vec2> positions) {
  if (tree.size() != positions.size() ||
      !std::equal(positions.begin(), positions.end(), tree.points().begin())) {
    throw std::logic_error("fmn: tree was not built over these positions");
  }
  SpatialGraph g(std::vector<Vec2>(positions.begin(), positions.end()));
  if (positions.empty()) return g;

  std::vector<std::int32_t> occupied;
  for (auto leaf : tree.leaves()) {
    if (tree.node(leaf).count() > 0) occupied.push_back(leaf);
  }

  for (auto leaf : occupied) {
    const auto members = tree.particles(leaf);
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        g.add_edge(members[a], members[b], EdgeLabel::intra_leaf);
      }
    }
  }

  for (auto leaf : occupied) {
    for (auto other : tree.touching_leaves(leaf)) {
      if (other <= leaf || tree.node(other).count() == 0) continue;
      const auto [u, v] = closest_cross_pair(tree.particles(leaf), tree.particles(other), positions);
      g.add_edge(u, v, EdgeLabel::adjacent_leaf);
    }
  }

  // In index order; a vertex patched to by an earlier one is no longer isolated.
  auto deg = g.degrees();
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] == 0 && positions.size() > 1) {
      const auto w = nearest_neighbor(v, positions);
      g.add_edge(v, w, EdgeLabel::isolation_patch);
      ++deg[v];
      ++deg[w];
    }
  }

  patch_components(g);
  g.sort_edges();
  return g;
}

SpatialGraph rgg(std::span<const Vec2> positions, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("rgg: r must be positive");
  SpatialGraph g(std::vector<Vec2>(positions.begin(), positions.end()));
  const auto n = positions.size();
  if (n < 2) return g;

  double minx = positions[0].x, maxx = minx, miny = positions[0].y, maxy = miny;
  for (const auto& p : positions) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double extent = std::max(maxx - minx, maxy - miny);
  // Cells no smaller than r, and no more than ~1024 per axis.
  const double cell = std::max(r, extent / 1024.0);
  const auto nx = static_cast<std::int64_t>((maxx - minx) / cell) + 1;
  const auto ny = static_cast<std::int64_t>((maxy - miny) / cell) + 1;
  auto cell_of = [&](Vec2 p) {
    const auto ix = std::min(nx - 1, static_cast<std::int64_t>((p.x - minx) / cell));
    const auto iy = std::min(ny - 1, static_cast<std::int64_t>((p.y - miny) / cell));
    return std::pair{ix, iy};
  };

  std::vector<std::pair<std::int64_t, std::uint32_t>> keyed(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto [ix, iy] = cell_of(positions[i]);
    keyed[i] = {ix * ny + iy, i};
  }
  std::sort(keyed.begin(), keyed.end());

  const double r2_slack = r * r * (1.0 + 1e-12);
  std::vector<std::uint32_t> near;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto [ix, iy] = cell_of(positions[i]);
    near.clear();
    for (auto cx = std::max<std::int64_t>(0, ix - 1); cx <= std::min(nx - 1, ix + 1); ++cx) {
      for (auto cy = std::max<std::int64_t>(0, iy - 1); cy <= std::min(ny - 1, iy + 1); ++cy) {
        const std::int64_t key = cx * ny + cy;
        auto it = std::lower_bound(keyed.begin(), keyed.end(), std::pair{key, std::uint32_t{0}});
        for (; it != keyed.end() && it->first == key; ++it) {
          const auto j = it->second;
          if (j > i && norm2(positions[i] - positions[j]) <= r2_slack) near.push_back(j);
        }
      }
    }
    std::sort(near.begin(), near.end());
    for (auto j : near) {
      // The stored edge length is distance(); compare on that.
      if (distance(positions[i], positions[j]) <= r) g.add_edge(i, j, EdgeLabel::plain);
    }
  }
  return g;
}

SpatialGraph delaunay(std::span<const Vec2> positions) {
  const DelaunayTriangulation dt(positions);
  SpatialGraph g(std::vector<Vec2>(positions.begin(), positions.end()));
  for (const auto& [u, v] : dt.edges()) g.add_edge(u, v, EdgeLabel::plain);
  return g;
}

SpatialGraph gabriel(std::span<const Vec2> positions) {
  const DelaunayTriangulation dt(positions);
  SpatialGraph g(std::vector<Vec2>(positions.begin(), positions.end()));
  const auto edges = dt.edges();
  const auto opposite = dt.opposite();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    bool empty = true;
    for (auto k : opposite[e]) {
      if (k < 0) continue;
      const Vec2 pk = positions[static_cast<std::size_t>(k)];
      // k is strictly inside the diametral circle iff the angle at k is obtuse.
      const long double dx1 = static_cast<long double>(positions[u].x) - pk.x;
      const long double dy1 = static_cast<long double>(positions[u].y) - pk.y;
      const long double dx2 = static_cast<long double>(positions[v].x) - pk.x;
      const long double dy2 = static_cast<long double>(positions[v].y) - pk.y;
      if (dx1 * dx2 + dy1 * dy2 < 0) empty = false;
    }
    if (empty) g.add_edge(u, v, EdgeLabel::plain);
  }
  return g;
}

SpatialGraph restrict(const SpatialGraph& g, double r) {
  SpatialGraph out(std::vector<Vec2>(g.positions().begin(), g.positions().end()));
  for (const auto& e : g.edges()) {
    if (e.length <= r) out.add_edge(e.u, e.v, e.label);
  }
  return out;
}

double connectivity_threshold(std::span<const Vec2> positions) {
  const auto n = positions.size();
  if (n < 2) throw std::invalid_argument("connectivity_threshold needs at least 2 points");
  // Prim on the complete graph, O(n^2).
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, 0);
  std::vector<char> in_tree(n, 0);
  best[0] = 0.0;
  double longest = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i] && (u == n || best[i] < best[u])) u = i;
    }
    in_tree[u] = 1;
    if (u != 0) longest = std::max(longest, distance(positions[u], positions[parent[u]]));
    for (std::size_t i = 0; i < n; ++i) {
      if (in_tree[i]) continue;
      const double d2 = norm2(positions[i] - positions[u]);
      if (d2 < best[i]) {
        best[i] = d2;
        parent[i] = u;
      }
    }
  }
  return longest;
}

}  // namespace fmnet
