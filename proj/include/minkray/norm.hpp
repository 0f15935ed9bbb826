#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"

namespace minkray {

/// Data attached to the k-th pair of opposite sides of the unit polygon:
/// the functional `v` with <p, v> = 1 on the chosen side and -1 on the
/// opposite one, the side vector `w` connecting the chosen side's vertices,
/// and the side's own length measured in the norm.
struct FacetData {
  Vec2 v;
  Vec2 w;
  double lambda = 0.0;
};

/// A norm whose unit disc is a centrally symmetric convex 2m-gon, stored as
/// the full counter-clockwise vertex list plus the derived facet data.
///
/// Side k (0-based) connects vertices[k] and vertices[k+1]; the opposite
/// side is its central reflection. norm of x = max_k |<x, v_k>|.
class PolygonalNorm {
 public:
  static PolygonalNorm build(std::vector<Vec2> vertices,
                             double tol = kDefaultTolerance) {
    PolygonalNorm n;
    n.vertices_ = std::move(vertices);
    n.validate(tol);
    n.build_facets();
    return n;
  }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<FacetData>& facets() const { return facets_; }
  int side_pairs() const { return static_cast<int>(facets_.size()); }

  double eval(Vec2 x) const {
    double best = 0.0;
    for (const FacetData& f : facets_) best = std::max(best, std::abs(dot(x, f.v)));
    return best;
  }

  /// All facet indices attaining the maximum |<x, v_k>| within a relative
  /// window of tol; one index generically, two on vertex directions.
  std::vector<int> facet_index(Vec2 x, double tol = kDefaultTolerance) const {
    if (x.x == 0.0 && x.y == 0.0)
      throw Error(errc::zero_vector, "facet_index: zero vector has no direction");
    const double n = eval(x);
    std::vector<int> out;
    for (int k = 0; k < side_pairs(); ++k)
      if (std::abs(dot(x, facets_[k].v)) >= n - tol * n) out.push_back(k);
    return out;
  }

  /// Endpoints of the side of the unit polygon lying on {<p,v_k> = sign}.
  Segment side(int k, int sign) const {
    const int n = static_cast<int>(vertices_.size());
    Vec2 a = vertices_[k];
    Vec2 b = vertices_[(k + 1) % n];
    if (sign < 0) return {-a, -b};
    return {a, b};
  }

  double min_side_length() const {
    double best = facets_[0].lambda;
    for (const FacetData& f : facets_) best = std::min(best, f.lambda);
    return best;
  }

 private:
  PolygonalNorm() = default;

  void validate(double tol) const {
    const std::size_t n = vertices_.size();
    if (n < 4 || n % 2 != 0)
      throw Error(errc::invalid_norm, "polygon needs an even vertex count >= 4");
    const std::size_t m = n / 2;
    for (const Vec2& p : vertices_)
      if (!p.finite()) throw Error(errc::invalid_norm, "non-finite vertex");
    for (std::size_t i = 0; i < m; ++i) {
      Vec2 s = vertices_[i + m] + vertices_[i];
      double scale = 1.0 + euclid(vertices_[i]);
      if (euclid(s) > tol * scale)
        throw Error(errc::not_centrally_symmetric,
                    "vertex " + std::to_string(i + m) + " is not the reflection of vertex " +
                        std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 a = vertices_[i];
      Vec2 b = vertices_[(i + 1) % n];
      Vec2 c = vertices_[(i + 2) % n];
      double l1 = euclid(b - a), l2 = euclid(c - b);
      if (l1 <= tol)
        throw Error(errc::degenerate_side, "side " + std::to_string(i) + " has zero length");
      double cr = cross(b - a, c - b);
      if (cr <= tol * l1 * l2)
        throw Error(errc::not_convex,
                    "vertices are not in strictly convex counter-clockwise position near index " +
                        std::to_string(i));
    }
  }

  void build_facets() {
    const int n = static_cast<int>(vertices_.size());
    const int m = n / 2;
    facets_.resize(m);
    for (int k = 0; k < m; ++k) {
      Vec2 a = vertices_[k];
      Vec2 b = vertices_[(k + 1) % n];
      Vec2 w = b - a;
      Vec2 c = (a + b) * 0.5;
      Vec2 nrm = perp(w);
      double den = dot(c, nrm);
      // den != 0: the side's line cannot pass through the origin for a valid
      // centrally symmetric polygon.
      facets_[k].v = nrm / den;  // <c, v> = +1, the deterministic sign choice
      facets_[k].w = w;
    }
    for (int k = 0; k < m; ++k) facets_[k].lambda = eval(facets_[k].w);
  }

  std::vector<Vec2> vertices_;
  std::vector<FacetData> facets_;
};

/// An lp norm with 1 < p < infinity (p = 1 and p = infinity are represented
/// as polygonal norms instead; see Norm::lp).
struct LpNorm {
  double p = 2.0;

  double eval(Vec2 x) const {
    if (p == 2.0) return std::hypot(x.x, x.y);
    double ax = std::abs(x.x), ay = std::abs(x.y);
    if (ax == 0.0 && ay == 0.0) return 0.0;
    // Factor out the max for stable pow at extreme magnitudes.
    double hi = std::max(ax, ay), lo = std::min(ax, ay);
    return hi * std::pow(1.0 + std::pow(lo / hi, p), 1.0 / p);
  }
};

/// Tagged union of the two supported norm families.
class Norm {
 public:
  static Norm lp(double p, double tol = kDefaultTolerance) {
    if (std::isnan(p) || p < 1.0)
      throw Error(errc::invalid_norm, "lp norm requires p >= 1");
    if (p == 1.0)
      return polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, tol);
    if (std::isinf(p))
      return polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}, tol);
    Norm n;
    n.rep_ = LpNorm{p};
    return n;
  }

  static Norm polygon(std::vector<Vec2> vertices, double tol = kDefaultTolerance) {
    Norm n;
    n.rep_ = PolygonalNorm::build(std::move(vertices), tol);
    return n;
  }

  static Norm from(PolygonalNorm poly) {
    Norm n;
    n.rep_ = std::move(poly);
    return n;
  }

  bool is_polygonal() const { return std::holds_alternative<PolygonalNorm>(rep_); }

  const PolygonalNorm& polygonal() const {
    if (!is_polygonal())
      throw Error(errc::invalid_norm, "operation requires a polygonal norm");
    return std::get<PolygonalNorm>(rep_);
  }

  double lp_exponent() const { return std::get<LpNorm>(rep_).p; }

  double eval(Vec2 x) const {
    if (!x.finite()) throw Error(errc::bad_input, "norm of a non-finite vector");
    if (const auto* poly = std::get_if<PolygonalNorm>(&rep_)) return poly->eval(x);
    return std::get<LpNorm>(rep_).eval(x);
  }

  std::string describe() const {
    if (is_polygonal())
      return "polygon(" + std::to_string(polygonal().vertices().size()) + " vertices)";
    return "lp(p=" + std::to_string(lp_exponent()) + ")";
  }

 private:
  Norm() = default;
  std::variant<LpNorm, PolygonalNorm> rep_;
};

inline double norm_eval(const Norm& n, Vec2 x) { return n.eval(x); }

inline PolygonalNorm build_polygonal(std::vector<Vec2> vertices,
                                     double tol = kDefaultTolerance) {
  return PolygonalNorm::build(std::move(vertices), tol);
}

inline std::vector<int> facet_index(const PolygonalNorm& n, Vec2 x,
                                    double tol = kDefaultTolerance) {
  return n.facet_index(x, tol);
}

inline double min_side_length(const PolygonalNorm& n) { return n.min_side_length(); }

/// Runtime check of the sum rule: if both x1 and x2 attain their norm as the
/// (positive) dot product with v_k, so does x1 + x2. Throws if the inputs do
/// not satisfy the hypothesis; returns whether the conclusion holds.
inline bool sum_direction_check(const PolygonalNorm& n, int k, Vec2 x1, Vec2 x2,
                                double tol = kDefaultTolerance) {
  const Vec2 v = n.facets().at(k).v;
  for (Vec2 x : {x1, x2}) {
    double nx = n.eval(x);
    if (std::abs(nx - dot(x, v)) > tol * (1.0 + nx))
      throw Error(errc::precondition_violated,
                  "sum_direction_check: input does not attain its norm on facet " +
                      std::to_string(k));
  }
  Vec2 s = x1 + x2;
  double ns = n.eval(s);
  return std::abs(ns - dot(s, v)) <= tol * (1.0 + ns);
}

}  // namespace minkray
