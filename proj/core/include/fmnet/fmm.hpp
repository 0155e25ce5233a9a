#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fmnet/charges.hpp"
#include "fmnet/expansion.hpp"
#include "fmnet/quadtree.hpp"

namespace fmnet {

/// Interaction counts from one evaluation, useful for checking that the far
/// field really goes through expansions.
struct FmmStats {
  int order = 0;
  std::size_t m2l = 0;
  std::size_t m2p = 0;
  std::size_t p2l = 0;
  std::size_t p2p_leaf_pairs = 0;
  std::size_t p2p_interactions = 0;
};

struct FmmResult {
  std::vector<FieldSample> samples;
  /// Multipole of the root box; a_0 is the total strength.
  Expansion root_multipole;
  FmmStats stats;
};

/// Exact pairwise sum of phi(x) = sum_j (-q_j) V(|x - xi_j|) and its gradient.
/// Terms where a target coincides with a source are skipped.
std::vector<FieldSample> eval_direct(std::span<const PointCharge> charges,
                                     std::span<const Vec2> targets);

/// Fast multipole evaluation. The tree must have been built over the charge
/// positions followed by the targets, in that order (see build_fmm_tree);
/// anything else is a std::logic_error. Epsilon must lie in (0, 0.1].
FmmResult evaluate_detailed(const QuadTree& tree, std::span<const PointCharge> charges,
                            std::span<const Vec2> targets, double epsilon);

std::vector<FieldSample> evaluate(const QuadTree& tree, std::span<const PointCharge> charges,
                                  std::span<const Vec2> targets, double epsilon);

/// Tree over the concatenation [charge positions..., targets...].
QuadTree build_fmm_tree(std::span<const PointCharge> charges, std::span<const Vec2> targets,
                        const TreeOptions& options = {});

/// Builds the tree and evaluates in one call.
std::vector<FieldSample> evaluate(std::span<const PointCharge> charges, std::span<const Vec2> targets,
                                  double epsilon, const TreeOptions& options = {});

}  // namespace fmnet
