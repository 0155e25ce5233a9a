#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string_view>

#include "fmnet/geometry.hpp"

namespace fmnet {

enum class ChargeKind { goal, obstacle, passive };

/// A source of the harmonic potential. Goals carry negative strength,
/// obstacles positive, passive test points zero.
struct PointCharge {
  Vec2 position;
  double strength = 0.0;
  ChargeKind kind = ChargeKind::passive;

  friend bool operator==(const PointCharge&, const PointCharge&) = default;
};

/// Throws std::invalid_argument when the strength sign disagrees with the kind.
void validate(const PointCharge& charge);

/// Infers the kind from the sign of the strength.
PointCharge make_charge(Vec2 position, double strength);

std::string_view to_string(ChargeKind kind) noexcept;
ChargeKind charge_kind_from_string(std::string_view name);

struct FieldSample {
  double potential = 0.0;
  Vec2 gradient;
};

inline constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;

/// V(r) = ln(r) / (2 pi). Throws std::domain_error for r <= 0.
double fundamental_solution(double r);

/// Accumulator for the complex form of the field. For a source of strength q
/// at xi the contribution is F(z) = q log(z - xi); the physical potential is
/// phi = -Re F / (2 pi) and grad phi = -(Re F', -Im F') / (2 pi).
struct ComplexField {
  std::complex<double> value;
  std::complex<double> derivative;

  ComplexField& operator+=(const ComplexField& o) noexcept {
    value += o.value;
    derivative += o.derivative;
    return *this;
  }

  FieldSample to_sample() const noexcept {
    return {-kInvTwoPi * value.real(), {-kInvTwoPi * derivative.real(), kInvTwoPi * derivative.imag()}};
  }
};

}  // namespace fmnet
