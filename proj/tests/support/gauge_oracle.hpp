#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths on purpose.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "minkray/geometry.hpp"

namespace minkray::testing {

/// Gauge of a convex polygon by ray-boundary intersection: finds t > 0 with
/// t*x on the boundary and returns 1/t. Uses only segment intersection, not
/// the facet functionals.
inline double gauge_by_ray(const std::vector<Vec2>& vertices, Vec2 x) {
  if (x.x == 0.0 && x.y == 0.0) return 0.0;
  const std::size_t n = vertices.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 a = vertices[i];
    Vec2 b = vertices[(i + 1) % n];
    // Solve t*x = a + s*(b-a), s in [0,1], t > 0.
    Vec2 d = b - a;
    double den = cross(x, d);
    if (den == 0.0) continue;  // ray parallel to the side
    double t = cross(a, d) / den;
    double s = cross(a, x) / den;
    if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::min(best, t);
  }
  return 1.0 / best;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec2 random_point(std::mt19937_64& rng, double lo, double hi) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

}  // namespace minkray::testing
