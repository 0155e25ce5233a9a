#include "fmnet/quadtree.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace fmnet {

QuadTree QuadTree::build(std::span<const Vec2> points, const TreeOptions& options) {
  if (options.leaf_capacity == 0) {
    throw std::invalid_argument("leaf_capacity must be at least 1");
  }
  if (options.max_depth < 0) {
    throw std::invalid_argument("max_depth must be non-negative");
  }
  if (!(options.root.half_width > 0.0)) {
    throw std::invalid_argument("root box half-width must be positive");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!options.root.contains_closed(points[i])) {
      throw std::domain_error("point " + std::to_string(i) + " lies outside the root box");
    }
  }

  QuadTree tree;
  tree.options_ = options;
  tree.options_.root.level = 0;
  tree.points_.assign(points.begin(), points.end());
  tree.order_.resize(points.size());
  std::iota(tree.order_.begin(), tree.order_.end(), 0U);
  tree.leaf_of_.assign(points.size(), QuadTreeNode::kNone);

  QuadTreeNode root;
  root.box = tree.options_.root;
  root.begin = 0;
  root.end = static_cast<std::uint32_t>(points.size());
  tree.nodes_.push_back(root);
  tree.split(0);

  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    if (tree.nodes_[i].is_leaf()) {
      const auto idx = static_cast<std::int32_t>(i);
      tree.leaves_.push_back(idx);
      for (auto p : tree.particles(idx)) tree.leaf_of_[p] = idx;
    }
  }
  return tree;
}

void QuadTree::split(std::int32_t node_index) {
  // Copy: nodes_ may reallocate below.
  const QuadTreeNode node = nodes_[static_cast<std::size_t>(node_index)];
  if (node.count() <= options_.leaf_capacity || node.box.level >= options_.max_depth) return;

  // Stable counting sort of the node's slice by quadrant.
  std::array<std::uint32_t, 5> offsets{};
  for (auto i = node.begin; i < node.end; ++i) {
    ++offsets[static_cast<std::size_t>(node.box.quadrant(points_[order_[i]])) + 1];
  }
  for (std::size_t q = 1; q < offsets.size(); ++q) offsets[q] += offsets[q - 1];
  std::vector<std::uint32_t> scratch(node.count());
  auto cursor = offsets;
  for (auto i = node.begin; i < node.end; ++i) {
    const auto q = static_cast<std::size_t>(node.box.quadrant(points_[order_[i]]));
    scratch[cursor[q]++] = order_[i];
  }
  std::copy(scratch.begin(), scratch.end(), order_.begin() + node.begin);

  const auto first = static_cast<std::int32_t>(nodes_.size());
  nodes_[static_cast<std::size_t>(node_index)].first_child = first;
  for (int q = 0; q < 4; ++q) {
    QuadTreeNode child;
    child.box = node.box.child(q);
    child.parent = node_index;
    child.begin = node.begin + offsets[static_cast<std::size_t>(q)];
    child.end = node.begin + offsets[static_cast<std::size_t>(q) + 1];
    nodes_.push_back(child);
  }
  for (int q = 0; q < 4; ++q) split(first + q);
}

std::span<const std::uint32_t> QuadTree::particles(std::int32_t node_index) const {
  const auto& n = node(node_index);
  return std::span<const std::uint32_t>(order_).subspan(n.begin, n.count());
}

int QuadTree::depth() const noexcept {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.box.level);
  return d;
}

std::vector<std::int32_t> QuadTree::touching_leaves(std::int32_t node_index) const {
  std::vector<std::int32_t> out;
  if (nodes_.empty()) return out;
  const Box& target = node(node_index).box;
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    const auto& n = node(i);
    if (i == node_index || !touching(n.box, target)) continue;
    if (n.is_leaf()) {
      out.push_back(i);
    } else {
      for (int q = 3; q >= 0; --q) stack.push_back(n.child(q));
    }
  }
  return out;
}

}  // namespace fmnet
