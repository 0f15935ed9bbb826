#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"
#include "minkray/norm.hpp"

namespace minkray {

/// Finite prefix of the set {0, 1, 1+q, 1+q+q^2, ...}. Element i is
/// (1 - q^i)/(1 - q); index 0 is the point 0 itself.
struct GeoProgression {
  double q = 0.5;
  int n = 2;
  std::vector<double> points;

  static GeoProgression make(double q, int n) {
    if (!(q > 0.0 && q < 1.0)) throw Error(errc::bad_input, "q must lie in (0,1)");
    if (n < 2) throw Error(errc::bad_input, "prefix length must be >= 2");
    GeoProgression g;
    g.q = q;
    g.n = n;
    g.points.resize(n);
    for (int i = 0; i < n; ++i) g.points[i] = (1.0 - std::pow(q, i)) / (1.0 - q);
    return g;
  }
};

/// Distance between elements i and j of the progression: (q^i - q^j)/(1-q)
/// for i < j. Also valid with i = 0 for pairs involving the point 0.
inline double gp_distance(double q, int i, int j) {
  if (i == j) return 0.0;
  int lo = std::min(i, j), hi = std::max(i, j);
  return (std::pow(q, lo) - std::pow(q, hi)) / (1.0 - q);
}

/// Candidate plane embedding; entry a corresponds to progression index
/// start_index + a of whatever slice is being checked.
struct PlaneSequence {
  std::vector<Vec2> pts;
};

struct VerifyResult {
  bool ok = false;
  double max_deviation = 0.0;
};

/// Checks that pts form an isometric copy of the progression slice with
/// indices start_index, start_index+1, ... under the given norm.
inline VerifyResult verify_slice(const Norm& n, double q, const std::vector<Vec2>& pts,
                                 int start_index, double tol = kDefaultTolerance) {
  VerifyResult r;
  r.ok = true;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (!pts[a].finite()) throw Error(errc::bad_input, "non-finite point in sequence");
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double want = gp_distance(q, start_index + static_cast<int>(a),
                                start_index + static_cast<int>(b));
      double got = n.eval(pts[a] - pts[b]);
      double dev = std::abs(got - want);
      r.max_deviation = std::max(r.max_deviation, dev);
      if (dev > tol) r.ok = false;
    }
  }
  return r;
}

/// Full-copy verification against a progression prefix. With include_zero the
/// sequence stands for indices 0..n-1, otherwise for indices 1..n-1.
inline VerifyResult verify_copy(const Norm& n, const GeoProgression& g,
                                const PlaneSequence& s, bool include_zero,
                                double tol = kDefaultTolerance) {
  const std::size_t expected = include_zero ? static_cast<std::size_t>(g.n)
                                            : static_cast<std::size_t>(g.n) - 1;
  if (s.pts.size() != expected)
    throw Error(errc::length_mismatch,
                "sequence has " + std::to_string(s.pts.size()) + " points, expected " +
                    std::to_string(expected));
  return verify_slice(n, g.q, s.pts, include_zero ? 0 : 1, tol);
}

/// A facet index and sign such that sigma * <z_i - z_j, v_k> equals the
/// distance for every pair i < j of the witnessed sequence.
struct DirectionWitness {
  int facet = 0;
  int sign = 1;
};

/// Enumerates all (facet, sign) witnesses for a copy of the progression
/// slice starting at start_index. Finite prefixes can admit more than one;
/// vertex-direction sequences admit exactly two. Throws no_witness when the
/// sequence is not a copy within tolerance or no facet works.
inline std::vector<DirectionWitness> find_directions(const PolygonalNorm& n,
                                                     const std::vector<Vec2>& pts, double q,
                                                     int start_index = 1,
                                                     double tol = kDefaultTolerance) {
  if (pts.size() < 2)
    throw Error(errc::bad_input, "need at least two points to find a direction");
  VerifyResult v = verify_slice(Norm::from(n), q, pts, start_index, tol);
  if (!v.ok)
    throw Error(errc::no_witness, "sequence is not a copy within tolerance (max deviation " +
                                      std::to_string(v.max_deviation) + ")");
  std::vector<DirectionWitness> out;
  for (int k = 0; k < n.side_pairs(); ++k) {
    const Vec2 vk = n.facets()[k].v;
    for (int sign : {+1, -1}) {
      bool all = true;
      for (std::size_t a = 0; a < pts.size() && all; ++a)
        for (std::size_t b = a + 1; b < pts.size() && all; ++b) {
          double want = gp_distance(q, start_index + static_cast<int>(a),
                                    start_index + static_cast<int>(b));
          if (std::abs(sign * dot(pts[a] - pts[b], vk) - want) > tol * (1.0 + want))
            all = false;
        }
      if (all) out.push_back({k, sign});
    }
  }
  if (out.empty())
    throw Error(errc::no_witness, "no facet direction fits all pairs");
  return out;
}

inline DirectionWitness find_direction(const PolygonalNorm& n, const std::vector<Vec2>& pts,
                                       double q, int start_index = 1,
                                       double tol = kDefaultTolerance) {
  return find_directions(n, pts, q, start_index, tol).front();
}

/// Limit the sequence accumulates toward, extrapolated collinearly from the
/// last two points; satisfies ||z_i - y|| = q^i / (1-q) for every index.
inline Vec2 limit_point(const std::vector<Vec2>& pts, double q) {
  if (pts.size() < 2) throw Error(errc::bad_input, "need two points to extrapolate a limit");
  Vec2 zl = pts[pts.size() - 1];
  Vec2 zp = pts[pts.size() - 2];
  return zl + (zl - zp) * (q / (1.0 - q));
}

/// A translated polygon side, any point of which prepends index
/// `new_index` to the copy it was derived from.
struct ExtensionSegment {
  Segment seg;
  int facet = 0;
  int sign = 1;
  int new_index = 0;
};

/// Core of the extension step: given a copy of the slice with lowest index
/// `lowest`, returns the segment(s) of points z such that prepending z yields
/// a copy of the slice with lowest index `lowest - 1`. The segment is
/// pts[0] + q^{lowest-1} * I for each side I of the polygon containing the
/// unit vector u = (z_lowest - z_{lowest+1}) / q^{lowest}; two segments on a
/// vertex direction. Each returned segment is self-checked at its endpoints
/// and midpoint.
inline std::vector<ExtensionSegment> extension_segments_at(
    const PolygonalNorm& n, const std::vector<Vec2>& pts, double q, int lowest,
    double tol = kDefaultTolerance) {
  if (lowest < 1) throw Error(errc::bad_input, "lowest index must be >= 1 to extend");
  if (pts.size() < 2) throw Error(errc::bad_input, "need at least two points to extend");
  const double gap = gp_distance(q, lowest, lowest + 1);  // = q^lowest
  const Vec2 u = (pts[0] - pts[1]) / gap;
  const double scale = std::pow(q, lowest - 1);

  std::vector<ExtensionSegment> out;
  for (int k : n.facet_index(u, tol)) {
    int sign = dot(u, n.facets()[k].v) >= 0.0 ? +1 : -1;
    Segment side = n.side(k, sign);
    ExtensionSegment e;
    e.seg = {pts[0] + side.a * scale, pts[0] + side.b * scale};
    e.facet = k;
    e.sign = sign;
    e.new_index = lowest - 1;
    // Self-check: endpoints and midpoint must complete the copy. On a vertex
    // direction one of the two candidate sides can fail for non-collinear
    // copies; such a branch is dropped rather than reported.
    bool valid = true;
    for (Vec2 z : {e.seg.a, e.seg.b, e.seg.midpoint()}) {
      std::vector<Vec2> extended;
      extended.reserve(pts.size() + 1);
      extended.push_back(z);
      extended.insert(extended.end(), pts.begin(), pts.end());
      VerifyResult r = verify_slice(Norm::from(n), q, extended, lowest - 1,
                                    tol * (1.0 + 1.0 / (1.0 - q)));
      if (!r.ok) valid = false;
    }
    if (valid) out.push_back(e);
  }
  if (out.empty())
    throw Error(errc::no_witness, "no polygon side extends this sequence");
  return out;
}

/// Extension of a copy of the progression minus its zero element (indices
/// 1, 2, ...) by a full translated polygon side: any point of the returned
/// segment(s) realizes index 0.
inline std::vector<ExtensionSegment> extension_segments(const PolygonalNorm& n,
                                                        const std::vector<Vec2>& pts, double q,
                                                        double tol = kDefaultTolerance) {
  find_directions(n, pts, q, 1, tol);  // validates the copy, throws no_witness otherwise
  return extension_segments_at(n, pts, q, 1, tol);
}

/// Places `count` collinear points inside the segment realizing progression
/// indices first_index, first_index+1, ...; the copy accumulates at the
/// lexicographically greater endpoint. Requires N-length(seg) >=
/// q^{first_index} / (1-q).
inline std::vector<Vec2> inscribe_progression(const Norm& n, const Segment& seg, double q,
                                              int first_index, int count,
                                              double tol = kDefaultTolerance) {
  if (count < 1) throw Error(errc::bad_input, "count must be >= 1");
  if (first_index < 0) throw Error(errc::bad_input, "first_index must be >= 0");
  const Vec2 hi = seg.lex_greater_end();
  const Vec2 lo = seg.lex_lesser_end();
  const double len = n.eval(hi - lo);
  const double need = std::pow(q, first_index) / (1.0 - q);
  if (need > len + tol)
    throw Error(errc::segment_too_short,
                "segment of length " + std::to_string(len) + " cannot host a copy needing " +
                    std::to_string(need));
  const Vec2 u = (hi - lo) / len;
  std::vector<Vec2> pts(count);
  for (int i = 0; i < count; ++i)
    pts[i] = hi - u * (std::pow(q, first_index + i) / (1.0 - q));
  return pts;
}

}  // namespace minkray
