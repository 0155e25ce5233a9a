#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace fmnet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) noexcept {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) noexcept {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return a *= s; }
  friend constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) noexcept = default;
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Vec2 a) noexcept { return dot(a, a); }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) noexcept { return norm(a - b); }

inline std::complex<double> to_complex(Vec2 v) noexcept { return {v.x, v.y}; }

/// Axis-aligned square. Membership is half-open, [x0, x1) x [y0, y1); the
/// closing of the root's top/right edges is handled by the quad-tree.
struct Box {
  Vec2 center;
  double half_width = 1.0;
  int level = 0;

  constexpr double side() const noexcept { return 2.0 * half_width; }
  constexpr double x0() const noexcept { return center.x - half_width; }
  constexpr double x1() const noexcept { return center.x + half_width; }
  constexpr double y0() const noexcept { return center.y - half_width; }
  constexpr double y1() const noexcept { return center.y + half_width; }

  /// Closed containment, used for the root box.
  constexpr bool contains_closed(Vec2 p) const noexcept {
    return p.x >= x0() && p.x <= x1() && p.y >= y0() && p.y <= y1();
  }

  /// Quadrant index of p relative to the center: bit 0 = east, bit 1 = north.
  constexpr int quadrant(Vec2 p) const noexcept {
    return (p.x >= center.x ? 1 : 0) | (p.y >= center.y ? 2 : 0);
  }

  constexpr Box child(int quadrant) const noexcept {
    const double h = 0.5 * half_width;
    return {{center.x + ((quadrant & 1) ? h : -h), center.y + ((quadrant & 2) ? h : -h)},
            h,
            level + 1};
  }

  static constexpr Box unit_root() noexcept { return {{0.0, 0.0}, 1.0, 0}; }

  friend constexpr bool operator==(const Box&, const Box&) noexcept = default;
};

/// True when the closed boxes intersect (edge or corner contact included).
/// Dyadic centers keep this exact.
constexpr bool touching(const Box& a, const Box& b) noexcept {
  const double reach = a.half_width + b.half_width;
  const double dx = a.center.x - b.center.x;
  const double dy = a.center.y - b.center.y;
  return (dx <= reach && -dx <= reach) && (dy <= reach && -dy <= reach);
}

/// Euclidean distance between two closed boxes (0 when they touch).
inline double box_distance(const Box& a, const Box& b) noexcept {
  const double reach = a.half_width + b.half_width;
  const double gx = std::max(0.0, std::abs(a.center.x - b.center.x) - reach);
  const double gy = std::max(0.0, std::abs(a.center.y - b.center.y) - reach);
  return std::hypot(gx, gy);
}

/// Same-size boxes of side s are well-separated iff they are at distance >= s.
/// For unequal boxes the larger side is the yardstick.
inline bool well_separated(const Box& a, const Box& b) noexcept {
  return box_distance(a, b) >= std::max(a.side(), b.side());
}

}  // namespace fmnet
