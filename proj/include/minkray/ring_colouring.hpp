#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"
#include "minkray/norm.hpp"

namespace minkray {

/// Colour schedule that takes every positive integer as a value infinitely
/// often: 1, 1,2, 1,2,3, 1,2,3,4, ... (block k lists 1..k).
inline int psi(long long j) {
  if (j < 1) throw Error(errc::bad_input, "psi is defined for j >= 1");
  long long k = static_cast<long long>((std::sqrt(8.0 * static_cast<double>(j) + 1.0) - 1.0) / 2.0);
  while (k * (k + 1) / 2 < j) ++k;
  while (k > 1 && (k - 1) * k / 2 >= j) --k;
  return static_cast<int>(j - k * (k - 1) / 2);
}

/// An unbounded (or not) point set, exposed as a canonical enumeration.
/// at(i) returns the i-th point, or nothing once the enumeration is
/// exhausted at the representable scale.
struct PointSampler {
  std::string name;
  Vec2 base;
  std::function<std::optional<Vec2>(std::size_t)> at;
};

/// {0} followed by powers of two on the x-axis.
inline PointSampler powers_of_two_sampler() {
  PointSampler s;
  s.name = "powers-of-two";
  s.base = {0, 0};
  s.at = [](std::size_t i) -> std::optional<Vec2> {
    if (i == 0) return Vec2{0, 0};
    if (i > 1020) return std::nullopt;  // past double range
    return Vec2{std::ldexp(1.0, static_cast<int>(i) - 1), 0.0};
  };
  return s;
}

/// The bounded set scale * {0, 1, 1+q, ...} on the x-axis; useful to
/// demonstrate sampler exhaustion.
inline PointSampler geometric_progression_sampler(double q, double scale = 1.0) {
  PointSampler s;
  s.name = "geometric-progression";
  s.base = {0, 0};
  s.at = [q, scale](std::size_t i) -> std::optional<Vec2> {
    if (i > 2000) return std::nullopt;  // numerically converged
    double v = (1.0 - std::pow(q, static_cast<double>(i))) / (1.0 - q);
    return Vec2{scale * v, 0.0};
  };
  return s;
}

/// Nested-ball colouring: rings between consecutive radii get colours from
/// the psi schedule. Radii follow r_{i+1} = r_i + ||x_i - x_0|| where the
/// anchors x_i are set points with ||x_i - x_0|| > 2 r_i.
class RingColouring {
 public:
  RingColouring(Norm norm, std::vector<double> radii, std::vector<Vec2> anchors,
                std::size_t cursor)
      : norm_(std::move(norm)),
        radii_(std::move(radii)),
        anchors_(std::move(anchors)),
        cursor_(cursor) {}

  const Norm& norm() const { return norm_; }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<Vec2>& anchor_points() const { return anchors_; }
  int rings() const { return static_cast<int>(radii_.size()); }
  std::size_t sampler_cursor() const { return cursor_; }

  /// 1-based index of the ring containing p: smallest i with ||p|| <= r_i.
  int ring_of(Vec2 p) const {
    double d = norm_.eval(p);
    for (int i = 0; i < rings(); ++i)
      if (d <= radii_[i]) return i + 1;
    throw Error(errc::out_of_range,
                "point with norm " + std::to_string(d) + " lies beyond ring " +
                    std::to_string(rings()) + "; extend the colouring first");
  }

  int colour(Vec2 p) const { return psi(ring_of(p)); }

 private:
  Norm norm_;
  std::vector<double> radii_;
  std::vector<Vec2> anchors_;
  std::size_t cursor_ = 1;  // sampler enumeration position after the last anchor
};

namespace detail {
inline RingColouring grow_rings(const Norm& n, const PointSampler& sampler, int target,
                                std::vector<double> radii, std::vector<Vec2> anchors,
                                std::size_t cursor) {
  const Vec2 base = anchors.front();
  while (static_cast<int>(radii.size()) < target) {
    const double need = 2.0 * radii.back();
    std::optional<Vec2> found;
    for (std::size_t j = cursor;; ++j) {
      std::optional<Vec2> p = sampler.at(j);
      if (!p) break;
      if (n.eval(*p - base) > need) {
        found = p;
        cursor = j + 1;
        break;
      }
    }
    if (!found)
      throw Error(errc::sampler_exhausted,
                  "no set point exceeds distance " + std::to_string(need) +
                      " from the base point; the set is bounded at this scale");
    anchors.push_back(*found);
    radii.push_back(radii.back() + n.eval(*found - base));
  }
  return RingColouring(n, std::move(radii), std::move(anchors), cursor);
}
}  // namespace detail

/// Runs the radius recurrence for `rings` rings, scanning the sampler's
/// enumeration for the first point far enough out at each step.
inline RingColouring build_ring_colouring(const Norm& n, const PointSampler& sampler,
                                          int rings) {
  if (rings < 1) throw Error(errc::bad_input, "need at least one ring");
  std::optional<Vec2> base = sampler.at(0);
  if (!base) throw Error(errc::sampler_exhausted, "sampler produced no base point");
  return detail::grow_rings(n, sampler, rings, {1.0}, {*base}, 1);
}

/// Same colouring with `more` additional rings; a new value that reuses the
/// existing radii and resumes the sampler scan where construction stopped.
inline RingColouring extend(const RingColouring& rc, const PointSampler& sampler, int more) {
  if (more < 0) throw Error(errc::bad_input, "cannot shrink a ring colouring");
  return detail::grow_rings(rc.norm(), sampler, rc.rings() + more, rc.radii(),
                            rc.anchor_points(), rc.sampler_cursor());
}

struct RingReport {
  std::vector<int> ring_of_point;
  int first_ring = 0;           // ring of the copy's base point
  bool tail_structure_ok = false;  // y_{i+j} in B_{i+j+1} \ B_{i+j} for all j >= 0
  std::vector<int> colours;
};

/// Checks that a copy of the anchor set (corresponding index-wise) hits the
/// predicted tail of rings: once the image of the base point lies in ball i,
/// the image of anchor i+j lies in ring i+j+1 for every j.
inline RingReport check_copy_meets_rings(const RingColouring& rc,
                                         const std::vector<Vec2>& copy) {
  if (copy.size() != rc.anchor_points().size())
    throw Error(errc::correspondence_mismatch,
                "copy has " + std::to_string(copy.size()) + " points but the colouring has " +
                    std::to_string(rc.anchor_points().size()) + " anchors");
  RingReport rep;
  for (const Vec2& p : copy) {
    int r = 0;  // 0 marks "beyond the built rings"
    try {
      r = rc.ring_of(p);
    } catch (const Error&) {
    }
    rep.ring_of_point.push_back(r);
    rep.colours.push_back(r == 0 ? 0 : psi(r));
  }
  const int i = rep.ring_of_point.front();
  if (i == 0)
    throw Error(errc::out_of_range, "copy base point lies beyond the built rings");
  rep.first_ring = i;
  rep.tail_structure_ok = true;
  for (std::size_t a = static_cast<std::size_t>(i); a < copy.size(); ++a) {
    const int predicted = static_cast<int>(a) + 1;
    if (predicted > rc.rings()) break;
    if (rep.ring_of_point[a] != predicted) rep.tail_structure_ok = false;
  }
  return rep;
}

}  // namespace minkray
