#include "fmnet/fmm.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fmnet {

// --- charges.hpp ------------------------------------------------------------

void validate(const PointCharge& charge) {
  const bool ok = (charge.kind == ChargeKind::goal && charge.strength < 0.0) ||
                  (charge.kind == ChargeKind::obstacle && charge.strength > 0.0) ||
                  (charge.kind == ChargeKind::passive && charge.strength == 0.0);
  if (!ok) {
    throw std::invalid_argument("charge strength " + std::to_string(charge.strength) +
                                " is inconsistent with kind " + std::string(to_string(charge.kind)));
  }
}

PointCharge make_charge(Vec2 position, double strength) {
  const auto kind = strength < 0.0   ? ChargeKind::goal
                    : strength > 0.0 ? ChargeKind::obstacle
                                     : ChargeKind::passive;
  return {position, strength, kind};
}

std::string_view to_string(ChargeKind kind) noexcept {
  switch (kind) {
    case ChargeKind::goal: return "goal";
    case ChargeKind::obstacle: return "obstacle";
    case ChargeKind::passive: return "passive";
  }
  return "passive";
}

ChargeKind charge_kind_from_string(std::string_view name) {
  if (name == "goal") return ChargeKind::goal;
  if (name == "obstacle") return ChargeKind::obstacle;
  if (name == "passive") return ChargeKind::passive;
  throw std::invalid_argument("unknown charge kind '" + std::string(name) + "'");
}

double fundamental_solution(double r) {
  if (!(r > 0.0)) throw std::domain_error("fundamental solution needs r > 0");
  return kInvTwoPi * std::log(r);
}

// --- direct summation ---------------------------------------------------------

namespace {

inline void accumulate_direct(ComplexField& acc, Vec2 target, Vec2 source, double q) {
  const double dx = target.x - source.x;
  const double dy = target.y - source.y;
  const double r2 = dx * dx + dy * dy;
  if (r2 == 0.0) return;
  acc.value += q * 0.5 * std::log(r2);
  // q / (dx + i dy)
  acc.derivative += std::complex<double>(q * dx / r2, -q * dy / r2);
}

}  // namespace

std::vector<FieldSample> eval_direct(std::span<const PointCharge> charges,
                                     std::span<const Vec2> targets) {
  std::vector<FieldSample> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    ComplexField acc;
    for (const auto& c : charges) accumulate_direct(acc, targets[t], c.position, c.strength);
    out[t] = acc.to_sample();
  }
  return out;
}

// --- fast multipole -------------------------------------------------------------

namespace {

class Evaluator {
 public:
  Evaluator(const QuadTree& tree, std::span<const PointCharge> charges, std::span<const Vec2> targets,
            int order)
      : tree_(tree), charges_(charges), targets_(targets), order_(order) {
    const auto nodes = tree.nodes();
    sources_in_.assign(nodes.size(), 0);
    targets_in_.assign(nodes.size(), 0);
    multipole_.resize(nodes.size());
    local_.resize(nodes.size());
    leaf_sources_.resize(nodes.size());
    leaf_targets_.resize(nodes.size());
    acc_.assign(targets.size(), ComplexField{});

    const auto n_sources = static_cast<std::uint32_t>(charges.size());
    for (auto leaf : tree.leaves()) {
      auto& src = leaf_sources_[static_cast<std::size_t>(leaf)];
      auto& tgt = leaf_targets_[static_cast<std::size_t>(leaf)];
      for (auto p : tree.particles(leaf)) {
        if (p < n_sources) {
          src.push_back(p);
        } else {
          tgt.push_back(p - n_sources);
        }
      }
    }
    // Children always follow their parent, so a reverse sweep is post-order.
    for (auto i = static_cast<std::int32_t>(nodes.size()) - 1; i >= 0; --i) {
      const auto& n = nodes[static_cast<std::size_t>(i)];
      auto& s = sources_in_[static_cast<std::size_t>(i)];
      auto& t = targets_in_[static_cast<std::size_t>(i)];
      if (n.is_leaf()) {
        s = leaf_sources_[static_cast<std::size_t>(i)].size();
        t = leaf_targets_[static_cast<std::size_t>(i)].size();
      } else {
        for (int q = 0; q < 4; ++q) {
          s += sources_in_[static_cast<std::size_t>(n.child(q))];
          t += targets_in_[static_cast<std::size_t>(n.child(q))];
        }
      }
    }
  }

  FmmResult run() {
    upward();
    if (!tree_.nodes().empty()) interact(0, 0);
    downward();

    FmmResult result;
    result.samples.resize(targets_.size());
    for (std::size_t t = 0; t < targets_.size(); ++t) result.samples[t] = acc_[t].to_sample();
    if (!tree_.nodes().empty() && sources_in_[0] > 0) {
      result.root_multipole = multipole_[0];
    } else {
      result.root_multipole = Expansion(ExpansionKind::multipole, tree_.root_box(), order_);
    }
    stats_.order = order_;
    result.stats = stats_;
    return result;
  }

 private:
  const QuadTreeNode& node(std::int32_t i) const { return tree_.node(i); }
  std::size_t idx(std::int32_t i) const { return static_cast<std::size_t>(i); }

  void upward() {
    const auto nodes = tree_.nodes();
    for (auto i = static_cast<std::int32_t>(nodes.size()) - 1; i >= 0; --i) {
      if (sources_in_[idx(i)] == 0) continue;
      const auto& n = node(i);
      auto& m = multipole_[idx(i)];
      m = Expansion(ExpansionKind::multipole, n.box, order_);
      if (n.is_leaf()) {
        for (auto s : leaf_sources_[idx(i)]) m.add_source(charges_[s].position, charges_[s].strength);
      } else {
        for (int q = 0; q < 4; ++q) {
          const auto c = n.child(q);
          if (sources_in_[idx(c)] > 0) m2m_accumulate(multipole_[idx(c)], m);
        }
      }
    }
  }

  Expansion& local(std::int32_t i) {
    auto& l = local_[idx(i)];
    if (l.order() < 0) l = Expansion(ExpansionKind::local, node(i).box, order_);
    return l;
  }

  // target node t, source node s
  void interact(std::int32_t t, std::int32_t s) {
    if (targets_in_[idx(t)] == 0 || sources_in_[idx(s)] == 0) return;
    const auto& tn = node(t);
    const auto& sn = node(s);

    if (tn.box.level == sn.box.level) {
      if (!touching(tn.box, sn.box)) {
        m2l_accumulate(multipole_[idx(s)], local(t));
        ++stats_.m2l;
      } else if (tn.is_leaf() && sn.is_leaf()) {
        p2p(t, s);
      } else if (tn.is_leaf()) {
        for (int q = 0; q < 4; ++q) interact(t, sn.child(q));
      } else if (sn.is_leaf()) {
        for (int q = 0; q < 4; ++q) interact(tn.child(q), s);
      } else {
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) interact(tn.child(a), sn.child(b));
        }
      }
      return;
    }

    // Unequal levels: the coarser box is always a leaf here, since only the
    // finer side of a same-level pair is ever refined.
    const bool target_coarser = tn.box.level < sn.box.level;
    if (well_separated(tn.box, sn.box)) {
      if (target_coarser) {
        m2p(t, s);
      } else {
        p2l(t, s);
      }
      return;
    }
    if (target_coarser) {
      if (sn.is_leaf()) {
        p2p(t, s);
      } else {
        for (int q = 0; q < 4; ++q) interact(t, sn.child(q));
      }
    } else {
      if (tn.is_leaf()) {
        p2p(t, s);
      } else {
        for (int q = 0; q < 4; ++q) interact(tn.child(q), s);
      }
    }
  }

  void p2p(std::int32_t t, std::int32_t s) {
    ++stats_.p2p_leaf_pairs;
    const auto& src = leaf_sources_[idx(s)];
    for (auto ti : leaf_targets_[idx(t)]) {
      ComplexField& acc = acc_[ti];
      const Vec2 z = targets_[ti];
      for (auto si : src) accumulate_direct(acc, z, charges_[si].position, charges_[si].strength);
    }
    stats_.p2p_interactions += src.size() * leaf_targets_[idx(t)].size();
  }

  // Multipole of a finer source box evaluated at the targets of a coarse leaf.
  void m2p(std::int32_t t, std::int32_t s) {
    ++stats_.m2p;
    const auto& m = multipole_[idx(s)];
    for (auto ti : leaf_targets_[idx(t)]) acc_[ti] += m.evaluate_complex(targets_[ti]);
  }

  // Sources of a coarse leaf folded into the local expansion of a finer box.
  void p2l(std::int32_t t, std::int32_t s) {
    ++stats_.p2l;
    auto& l = local(t);
    for (auto si : leaf_sources_[idx(s)]) l.add_source(charges_[si].position, charges_[si].strength);
  }

  void downward() {
    const auto nodes = tree_.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (targets_in_[i] == 0) continue;
      const auto& n = nodes[i];
      const auto has_local = local_[i].order() >= 0;
      if (n.is_leaf()) {
        if (!has_local) continue;
        for (auto ti : leaf_targets_[i]) acc_[ti] += local_[i].evaluate_complex(targets_[ti]);
        continue;
      }
      if (!has_local) continue;
      for (int q = 0; q < 4; ++q) {
        const auto c = n.child(q);
        if (targets_in_[idx(c)] > 0) l2l_accumulate(local_[i], local(c));
      }
    }
  }

  const QuadTree& tree_;
  std::span<const PointCharge> charges_;
  std::span<const Vec2> targets_;
  int order_;

  std::vector<std::size_t> sources_in_;
  std::vector<std::size_t> targets_in_;
  std::vector<Expansion> multipole_;
  std::vector<Expansion> local_;
  std::vector<std::vector<std::uint32_t>> leaf_sources_;
  std::vector<std::vector<std::uint32_t>> leaf_targets_;
  std::vector<ComplexField> acc_;
  FmmStats stats_;
};

void check_tree_matches(const QuadTree& tree, std::span<const PointCharge> charges,
                        std::span<const Vec2> targets) {
  if (tree.size() != charges.size() + targets.size()) {
    throw std::logic_error("tree was built over " + std::to_string(tree.size()) + " points, expected " +
                           std::to_string(charges.size() + targets.size()));
  }
  const auto pts = tree.points();
  for (std::size_t i = 0; i < charges.size(); ++i) {
    if (pts[i] != charges[i].position) {
      throw std::logic_error("tree point " + std::to_string(i) + " does not match charge position");
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (pts[charges.size() + i] != targets[i]) {
      throw std::logic_error("tree point " + std::to_string(charges.size() + i) +
                             " does not match target position");
    }
  }
}

}  // namespace

FmmResult evaluate_detailed(const QuadTree& tree, std::span<const PointCharge> charges,
                            std::span<const Vec2> targets, double epsilon) {
  const int order = order_for_epsilon(epsilon);
  check_tree_matches(tree, charges, targets);
  return Evaluator(tree, charges, targets, order).run();
}

std::vector<FieldSample> evaluate(const QuadTree& tree, std::span<const PointCharge> charges,
                                  std::span<const Vec2> targets, double epsilon) {
  return evaluate_detailed(tree, charges, targets, epsilon).samples;
}

QuadTree build_fmm_tree(std::span<const PointCharge> charges, std::span<const Vec2> targets,
                        const TreeOptions& options) {
  std::vector<Vec2> points;
  points.reserve(charges.size() + targets.size());
  for (const auto& c : charges) points.push_back(c.position);
  points.insert(points.end(), targets.begin(), targets.end());
  return QuadTree::build(points, options);
}

std::vector<FieldSample> evaluate(std::span<const PointCharge> charges, std::span<const Vec2> targets,
                                  double epsilon, const TreeOptions& options) {
  order_for_epsilon(epsilon);
  const auto tree = build_fmm_tree(charges, targets, options);
  return evaluate(tree, charges, targets, epsilon);
}

}  // namespace fmnet
