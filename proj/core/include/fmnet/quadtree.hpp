#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fmnet/geometry.hpp"

namespace fmnet {

struct TreeOptions {
  std::size_t leaf_capacity = 30;
  int max_depth = 20;
  Box root = Box::unit_root();
};

struct QuadTreeNode {
  static constexpr std::int32_t kNone = -1;

  Box box;
  std::int32_t parent = kNone;
  /// Index of the first of four consecutive children, or kNone for a leaf.
  std::int32_t first_child = kNone;
  /// Range into QuadTree::order(); every node owns a contiguous slice.
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  bool is_leaf() const noexcept { return first_child == kNone; }
  std::uint32_t count() const noexcept { return end - begin; }
  std::int32_t child(int q) const noexcept { return first_child + q; }

  friend bool operator==(const QuadTreeNode&, const QuadTreeNode&) = default;
};

/// Adaptive quad-tree over a fixed point set. Immutable once built; the
/// structure depends only on point locations and the options.
class QuadTree {
 public:
  QuadTree() = default;

  /// Throws std::domain_error naming the first point outside the root box and
  /// std::invalid_argument for a zero leaf capacity or negative depth.
  static QuadTree build(std::span<const Vec2> points, const TreeOptions& options = {});

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const Vec2> points() const noexcept { return points_; }
  const TreeOptions& options() const noexcept { return options_; }
  const Box& root_box() const noexcept { return options_.root; }

  std::span<const QuadTreeNode> nodes() const noexcept { return nodes_; }
  const QuadTreeNode& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }

  /// Leaf node indices in depth-first order (empty leaves included).
  std::span<const std::int32_t> leaves() const noexcept { return leaves_; }

  /// Point indices owned by a node, in tree order.
  std::span<const std::uint32_t> particles(std::int32_t node_index) const;

  /// Permutation of point indices grouped by node.
  std::span<const std::uint32_t> order() const noexcept { return order_; }

  std::int32_t leaf_of(std::size_t point) const { return leaf_of_[point]; }

  int depth() const noexcept;

  /// Leaves whose closed boxes touch the given node's closed box, excluding
  /// the node itself. Leaves may sit on any level.
  std::vector<std::int32_t> touching_leaves(std::int32_t node_index) const;

  friend bool operator==(const QuadTree& a, const QuadTree& b) {
    return a.nodes_ == b.nodes_ && a.order_ == b.order_;
  }

 private:
  void split(std::int32_t node_index);

  TreeOptions options_;
  std::vector<Vec2> points_;
  std::vector<QuadTreeNode> nodes_;
  std::vector<std::uint32_t> order_;
  std::vector<std::int32_t> leaves_;
  std::vector<std::int32_t> leaf_of_;
};

inline QuadTree build_tree(std::span<const Vec2> points, std::size_t leaf_capacity = 30,
                           int max_depth = 20, const Box& root = Box::unit_root()) {
  return QuadTree::build(points, {leaf_capacity, max_depth, root});
}

}  // namespace fmnet
