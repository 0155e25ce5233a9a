#pragma once

#include <span>

#include "fmnet/quadtree.hpp"
#include "fmnet/spatial_graph.hpp"

namespace fmnet {

/// Fast multipole network over the tree's points:
///   1. a clique inside every non-empty leaf              (intra-leaf)
///   2. the closest cross pair of every touching pair of
///      non-empty leaves, across levels                   (adjacent-leaf)
///   3. each vertex still isolated, in index order, joined to its nearest
///      neighbour                                         (isolation-patch)
///   4. while more than one component remains, the globally
///      shortest inter-component edge                     (component-patch)
/// Distance ties go to the lowest vertex indices. The result is connected.
/// Throws std::logic_error if the positions are not the tree's points.
SpatialGraph fmn(const QuadTree& tree, std::span<const Vec2> positions);

/// Disk graph: {j, k} is an edge iff |xi_j - xi_k| <= r.
SpatialGraph rgg(std::span<const Vec2> positions, double r);

/// Delaunay graph. Throws std::invalid_argument for fewer than 2 points.
SpatialGraph delaunay(std::span<const Vec2> positions);

/// Gabriel graph: Delaunay edges whose open diametral disk holds no vertex.
SpatialGraph gabriel(std::span<const Vec2> positions);

/// Edges of g no longer than r, labels kept. restrict(D, r) is the restricted
/// Delaunay graph, and likewise for Gabriel and FMN.
SpatialGraph restrict(const SpatialGraph& g, double r);

/// Longest edge of the Euclidean minimum spanning tree: the least r for which
/// rgg(positions, r) is connected. Throws std::invalid_argument below 2 points.
double connectivity_threshold(std::span<const Vec2> positions);

}  // namespace fmnet
