#pragma once

#include <cmath>
#include <ostream>

namespace minkray {

/// Default absolute tolerance for geometric predicates. Most entry points
/// take an explicit `tol` argument that defaults to this value.
inline constexpr double kDefaultTolerance = 1e-9;

/// A point of the plane, identified with its position vector.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Vec2&) const = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Counter-clockwise perpendicular.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline double euclid(Vec2 v) { return std::hypot(v.x, v.y); }

/// Lexicographic order on (x, then y).
constexpr bool lex_less(Vec2 a, Vec2 b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

struct Segment {
  Vec2 a;
  Vec2 b;

  Vec2 midpoint() const { return (a + b) * 0.5; }
  /// Endpoint that is greater in the (x, then y) lexicographic order.
  Vec2 lex_greater_end() const { return lex_less(a, b) ? b : a; }
  Vec2 lex_lesser_end() const { return lex_less(a, b) ? a : b; }
};

inline std::ostream& operator<<(std::ostream& os, Vec2 v) {
  return os << "(" << v.x << ", " << v.y << ")";
}

}  // namespace minkray
