#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fmnet/charges.hpp"
#include "fmnet/geometry.hpp"

namespace fmnet {

enum class ExpansionKind { multipole, local };

/// Truncated series about a box center, in the complex-logarithm form
///
///   multipole:  F(z) = a_0 log(z - c) + sum_{k=1..p} a_k (z - c)^{-k}
///   local:      F(z) = sum_{l=0..p} b_l (z - c)^l
///
/// Coefficients are stored scaled by the box half-width rho
/// (a_k / rho^k and b_l rho^l) so deep boxes and high orders stay in range.
/// coefficient() returns the unscaled value.
class Expansion {
 public:
  Expansion() = default;
  Expansion(ExpansionKind kind, const Box& box, int order);

  ExpansionKind kind() const noexcept { return kind_; }
  const Box& box() const noexcept { return box_; }
  Vec2 center() const noexcept { return box_.center; }
  int order() const noexcept { return static_cast<int>(scaled_.size()) - 1; }

  std::complex<double> coefficient(int k) const;
  std::span<const std::complex<double>> scaled() const noexcept { return scaled_; }
  std::span<std::complex<double>> scaled() noexcept { return scaled_; }

  bool is_zero() const noexcept;

  /// P2M for a multipole, P2L for a local expansion.
  void add_source(Vec2 position, double strength);

  ComplexField evaluate_complex(Vec2 z) const;
  FieldSample evaluate(Vec2 z) const { return evaluate_complex(z).to_sample(); }

  Expansion& operator+=(const Expansion& other);

 private:
  ExpansionKind kind_ = ExpansionKind::multipole;
  Box box_;
  std::vector<std::complex<double>> scaled_;
};

/// Number of terms for accuracy epsilon: max(ceil(log2(1/epsilon)), 3).
int order_for_epsilon(double epsilon);

Expansion p2m(std::span<const PointCharge> charges, const Box& box, int order);

/// Re-centre a child multipole on its parent box.
Expansion m2m(const Expansion& child, const Box& parent_box);

/// Convert a multipole into a local expansion about a well-separated box.
/// Throws std::logic_error when the boxes are not well-separated.
Expansion m2l(const Expansion& source, const Box& target_box);

/// Re-centre a local expansion on a child box.
Expansion l2l(const Expansion& parent, const Box& child_box);

// In-place accumulating forms used by the evaluator.
void m2m_accumulate(const Expansion& child, Expansion& parent);
void m2l_accumulate(const Expansion& source, Expansion& target);
void l2l_accumulate(const Expansion& parent, Expansion& child);

}  // namespace fmnet
