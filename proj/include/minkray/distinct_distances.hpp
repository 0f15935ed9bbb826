#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"
#include "minkray/norm.hpp"

namespace minkray {

/// A finite sequence contracting toward an accumulation point y with ratio
/// at most 1/3 between consecutive distances.
struct ContractingSequence {
  Vec2 y;
  std::vector<Vec2> pts;  // ordered by strictly decreasing distance to y
};

/// Extracts a maximum-length subsequence contracting toward an accumulation
/// point with ratio 1/3. If `centre` is not given, the accumulation point is
/// detected heuristically as the input point minimizing its third-nearest
/// neighbour distance (that point is then excluded from the sequence).
/// Throws no_accumulation when no chain of length >= 2 exists.
inline ContractingSequence select_contracting(const std::vector<Vec2>& points, const Norm& n,
                                              std::optional<Vec2> centre = std::nullopt,
                                              double tol = kDefaultTolerance) {
  if (points.empty()) throw Error(errc::no_accumulation, "empty point set");
  Vec2 y;
  if (centre) {
    y = *centre;
  } else {
    if (points.size() < 2)
      throw Error(errc::no_accumulation, "need at least two points to detect accumulation");
    const int kth = static_cast<int>(std::min<std::size_t>(3, points.size() - 1));
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& c : points) {
      std::vector<double> d;
      for (const Vec2& p : points)
        if (!(p == c)) d.push_back(n.eval(p - c));
      std::nth_element(d.begin(), d.begin() + (kth - 1), d.end());
      if (d[kth - 1] < best) {
        best = d[kth - 1];
        y = c;
      }
    }
  }

  struct Entry {
    double d;
    Vec2 p;
  };
  std::vector<Entry> cand;
  for (const Vec2& p : points) {
    double d = n.eval(p - y);
    if (d > tol) cand.push_back({d, p});
  }
  std::sort(cand.begin(), cand.end(), [](const Entry& a, const Entry& b) { return a.d > b.d; });

  // Longest chain with each distance at most a third of the previous one.
  const std::size_t nc = cand.size();
  std::vector<int> len(nc, 1), next(nc, -1);
  for (int i = static_cast<int>(nc) - 1; i >= 0; --i)
    for (std::size_t j = i + 1; j < nc; ++j)
      if (cand[j].d <= cand[i].d / 3.0 + tol && len[j] + 1 > len[i]) {
        len[i] = len[j] + 1;
        next[i] = static_cast<int>(j);
      }
  int start = -1, best_len = 0;
  for (std::size_t i = 0; i < nc; ++i)
    if (len[i] > best_len) {
      best_len = len[i];
      start = static_cast<int>(i);
    }
  if (best_len < 2)
    throw Error(errc::no_accumulation,
                "no contracting chain of length 2 at ratio 1/3; the set is too spread out");
  ContractingSequence cs;
  cs.y = y;
  for (int i = start; i != -1; i = next[i]) cs.pts.push_back(cand[i].p);
  return cs;
}

struct RedBlueResult {
  std::vector<Vec2> points;   // the red subsequence, in order
  std::size_t blue_count = 0;
  std::size_t dropped = 0;  // points deleted as duplicate distance-class members
};

/// Finite analog of the red/blue sphere filtering: walking the sequence in
/// order, later points are grouped into distance classes around the current
/// point and each class keeps only its first member; the current point is
/// red when every class was a singleton. The red output has pairwise
/// distinct distances. Ties within tol of a class representative count as
/// equal.
inline RedBlueResult red_blue_filter(const ContractingSequence& cs, const Norm& n,
                                     double tol = kDefaultTolerance) {
  std::vector<Vec2> live = cs.pts;
  RedBlueResult res;
  for (std::size_t i = 0; i < live.size(); ++i) {
    const Vec2 z = live[i];
    std::vector<double> reps;
    std::vector<Vec2> keep(live.begin(), live.begin() + i + 1);
    bool blue = false;
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      double d = n.eval(live[j] - z);
      bool duplicate = false;
      for (double r : reps)
        if (std::abs(d - r) <= tol) {
          duplicate = true;
          break;
        }
      if (duplicate) {
        blue = true;
        ++res.dropped;
      } else {
        reps.push_back(d);
        keep.push_back(live[j]);
      }
    }
    live = std::move(keep);
    if (blue)
      ++res.blue_count;
    else
      res.points.push_back(z);
  }
  return res;
}

/// True when all pairwise distances within pts are separated by more than
/// tol (pair-of-pairs scan).
inline bool pairwise_distances_distinct(const std::vector<Vec2>& pts, const Norm& n,
                                        double tol = kDefaultTolerance) {
  std::vector<double> d;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) d.push_back(n.eval(pts[a] - pts[b]));
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i + 1] - d[i] <= tol) return false;
  return true;
}

/// Exhaustive maximum subset with pairwise distinct distances. max_size caps
/// the starting subset size of the top-down search. Only for small inputs.
inline std::vector<Vec2> brute_force_distinct_subset(const std::vector<Vec2>& points,
                                                     const Norm& n,
                                                     std::optional<int> max_size = std::nullopt,
                                                     double tol = kDefaultTolerance) {
  const int count = static_cast<int>(points.size());
  if (count > 20)
    throw Error(errc::too_large, "exhaustive search limited to 20 points, got " +
                                     std::to_string(count));
  int top = std::min(count, max_size.value_or(count));
  for (int s = top; s >= 1; --s) {
    // Gosper's hack over all size-s subsets.
    std::uint32_t mask = (1u << s) - 1u;
    const std::uint32_t limit = 1u << count;
    while (mask < limit) {
      std::vector<Vec2> subset;
      for (int b = 0; b < count; ++b)
        if (mask & (1u << b)) subset.push_back(points[b]);
      if (pairwise_distances_distinct(subset, n, tol)) return subset;
      std::uint32_t c = mask & -mask;
      std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return {};
}

}  // namespace minkray
