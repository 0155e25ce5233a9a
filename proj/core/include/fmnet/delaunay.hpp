#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fmnet/geometry.hpp"

namespace fmnet {

using Triangle = std::array<std::uint32_t, 3>;

/// Delaunay triangulation by incremental Bowyer-Watson insertion in index
/// order. Triangles are counter-clockwise. Points on a circumcircle do not
/// invalidate a triangle, so cocircular ties resolve towards the earlier
/// insertion. Collinear inputs yield no triangles.
///
/// Throws std::invalid_argument for fewer than 2 points or coincident points.
class DelaunayTriangulation {
 public:
  explicit DelaunayTriangulation(std::span<const Vec2> points);

  std::span<const Triangle> triangles() const noexcept { return triangles_; }

  /// Sorted unique edges (u < v). For collinear input this is the path
  /// through the points in order along the line.
  std::span<const std::pair<std::uint32_t, std::uint32_t>> edges() const noexcept { return edges_; }

  /// For each edge in edges(), the vertices opposite it in its (one or two)
  /// incident triangles; -1 where absent.
  std::span<const std::array<std::int64_t, 2>> opposite() const noexcept { return opposite_; }

 private:
  std::vector<Triangle> triangles_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::array<std::int64_t, 2>> opposite_;
};

/// Orientation and in-circle predicates evaluated in long double.
/// > 0 when c lies to the left of a -> b.
long double orient2d(Vec2 a, Vec2 b, Vec2 c);
/// > 0 when d lies strictly inside the circle through counter-clockwise a, b, c.
long double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

}  // namespace fmnet
