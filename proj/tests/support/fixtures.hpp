#pragma once

#include <cmath>
#include <vector>

#include "minkray/geometry.hpp"

namespace minkray::testing {

inline std::vector<Vec2> square_vertices() {
  return {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
}

inline std::vector<Vec2> rectangle_vertices() {
  return {{2, -1}, {2, 1}, {-2, 1}, {-2, -1}};
}

inline std::vector<Vec2> hexagon_vertices() {
  const double h = std::sqrt(3.0) / 2.0;
  return {{1, 0}, {0.5, h}, {-0.5, h}, {-1, 0}, {-0.5, -h}, {0.5, -h}};
}

inline std::vector<Vec2> octagon_vertices() {
  std::vector<Vec2> v;
  for (int k = 0; k < 8; ++k) {
    double a = k * M_PI / 4.0;
    v.push_back({std::cos(a), std::sin(a)});
  }
  return v;
}

/// Centrally symmetric but otherwise irregular convex 10-gon.
inline std::vector<Vec2> irregular_decagon_vertices() {
  const double radii[5] = {1.00, 1.07, 0.94, 1.06, 0.97};
  std::vector<Vec2> half;
  for (int i = 0; i < 5; ++i) {
    double a = (17.0 + 36.0 * i) * M_PI / 180.0;
    half.push_back({radii[i] * std::cos(a), radii[i] * std::sin(a)});
  }
  std::vector<Vec2> v = half;
  for (const Vec2& p : half) v.push_back(-p);
  return v;
}

}  // namespace minkray::testing
