#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"
#include "minkray/norm.hpp"

namespace minkray {

/// The set of points lp-equidistant from y1 and y2, for 1 < p < infinity.
struct BisectorSpec {
  double p = 2.0;
  Vec2 y1;
  Vec2 y2;

  static BisectorSpec make(double p, Vec2 y1, Vec2 y2, double tol = kDefaultTolerance) {
    if (!(p > 1.0) || std::isinf(p))
      throw Error(errc::bad_input, "bisector lab requires 1 < p < infinity");
    if (euclid(y1 - y2) <= tol)
      throw Error(errc::bad_input, "bisector of coincident points is undefined");
    return {p, y1, y2};
  }
};

inline double bisector_residual(const BisectorSpec& b, Vec2 x) {
  LpNorm n{b.p};
  return n.eval(x - b.y1) - n.eval(x - b.y2);
}

struct Window {
  double x0 = -10, y0 = -10, x1 = 10, y1 = 10;

  bool contains(Vec2 p, double slack = 0.0) const {
    return p.x >= x0 - slack && p.x <= x1 + slack && p.y >= y0 - slack && p.y <= y1 + slack;
  }
  double diameter() const { return std::hypot(x1 - x0, y1 - y0); }
};

struct Polyline {
  std::vector<Vec2> points;       // ordered by scanline offset
  int scanlines = 0;
  int missed_scanlines = 0;       // lines with no sign change inside the window
};

/// Traces the bisector by scanlines parallel to the chord y1->y2: along that
/// direction the residual is nondecreasing, so a sign change brackets the
/// unique root, refined by bisection.
inline Polyline trace_bisector(const BisectorSpec& b, const Window& win, double step,
                               double tol = kDefaultTolerance) {
  if (!(step > 0)) throw Error(errc::bad_input, "step must be positive");
  if (!(win.x1 > win.x0) || !(win.y1 > win.y0))
    throw Error(errc::bad_input, "window is degenerate");
  const Vec2 d = (b.y2 - b.y1) / euclid(b.y2 - b.y1);
  const Vec2 e = perp(d);
  const Vec2 origin = (b.y1 + b.y2) * 0.5;
  const Vec2 corners[4] = {{win.x0, win.y0}, {win.x1, win.y0}, {win.x0, win.y1}, {win.x1, win.y1}};
  double smin = 1e300, smax = -1e300, tmin = 1e300, tmax = -1e300;
  for (Vec2 c : corners) {
    smin = std::min(smin, dot(c - origin, e));
    smax = std::max(smax, dot(c - origin, e));
    tmin = std::min(tmin, dot(c - origin, d));
    tmax = std::max(tmax, dot(c - origin, d));
  }

  Polyline out;
  for (double s = smin; s <= smax + step * 0.5; s += step) {
    ++out.scanlines;
    const Vec2 base = origin + e * s;
    auto f = [&](double t) { return bisector_residual(b, base + d * t); };
    double ta = tmin, tb = tmax;
    double fa = f(ta), fb = f(tb);
    if (fa > 0.0 || fb < 0.0) {
      ++out.missed_scanlines;
      continue;
    }
    for (int it = 0; it < 80 && tb - ta > 1e-13 * (1.0 + std::abs(ta) + std::abs(tb)); ++it) {
      double tm = 0.5 * (ta + tb);
      double fm = f(tm);
      if (fm < 0.0)
        ta = tm;
      else
        tb = tm;
    }
    Vec2 root = base + d * (0.5 * (ta + tb));
    if (win.contains(root, tol) && std::abs(bisector_residual(b, root)) <= tol)
      out.points.push_back(root);
    else
      ++out.missed_scanlines;
  }
  return out;
}

struct LinearityResult {
  bool linear = false;
  double max_deviation = 0.0;  // from the total-least-squares line
};

/// Fits a line through the points (total least squares) and reports the
/// maximum perpendicular deviation; linear when it stays below
/// tol * extent of the polyline.
inline LinearityResult linearity_test(const std::vector<Vec2>& pts,
                                      double tol = kDefaultTolerance) {
  if (pts.size() < 3)
    throw Error(errc::too_few_points, "linearity test needs at least three points");
  Vec2 mean{0, 0};
  for (Vec2 p : pts) mean = mean + p;
  mean = mean / static_cast<double>(pts.size());
  double sxx = 0, sxy = 0, syy = 0;
  for (Vec2 p : pts) {
    Vec2 q = p - mean;
    sxx += q.x * q.x;
    sxy += q.x * q.y;
    syy += q.y * q.y;
  }
  // Normal of the best-fit line: eigenvector of the smaller eigenvalue.
  const double tr = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  const double lam = tr / 2.0 - std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  Vec2 normal = std::abs(sxx - lam) > std::abs(syy - lam) ? Vec2{sxy, lam - sxx}
                                                          : Vec2{lam - syy, sxy};
  if (euclid(normal) == 0.0) normal = {0, 1};  // perfectly degenerate input
  normal = normal / euclid(normal);

  LinearityResult r;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (Vec2 p : pts) {
    r.max_deviation = std::max(r.max_deviation, std::abs(dot(p - mean, normal)));
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  const double extent = std::hypot(xhi - xlo, yhi - ylo);
  r.linear = r.max_deviation <= tol * std::max(extent, 1.0);
  return r;
}

struct IntersectionResult {
  int count = 0;
  std::vector<Vec2> points;
};

/// Intersections of two traced bisectors inside the window: polyline
/// crossings refined by a 2-d Newton polish on the residual pair, merged
/// when closer than 2 * step. Every reported point has both residuals
/// within tol.
inline IntersectionResult count_intersections(const BisectorSpec& b1, const BisectorSpec& b2,
                                              const Window& win, double step,
                                              double tol = 1e-6) {
  const bool same_pair = (b1.y1 == b2.y1 && b1.y2 == b2.y2) ||
                         (b1.y1 == b2.y2 && b1.y2 == b2.y1);
  if (b1.p == b2.p && same_pair)
    throw Error(errc::bad_input, "the two bisectors must come from distinct point pairs");

  Polyline c1 = trace_bisector(b1, win, step);
  Polyline c2 = trace_bisector(b2, win, step);

  auto newton = [&](Vec2 x) {
    for (int it = 0; it < 60; ++it) {
      double f1 = bisector_residual(b1, x);
      double f2 = bisector_residual(b2, x);
      if (std::abs(f1) <= 1e-12 && std::abs(f2) <= 1e-12) break;
      const double h = 1e-7 * (1.0 + euclid(x));
      double a11 = (bisector_residual(b1, {x.x + h, x.y}) - bisector_residual(b1, {x.x - h, x.y})) / (2 * h);
      double a12 = (bisector_residual(b1, {x.x, x.y + h}) - bisector_residual(b1, {x.x, x.y - h})) / (2 * h);
      double a21 = (bisector_residual(b2, {x.x + h, x.y}) - bisector_residual(b2, {x.x - h, x.y})) / (2 * h);
      double a22 = (bisector_residual(b2, {x.x, x.y + h}) - bisector_residual(b2, {x.x, x.y - h})) / (2 * h);
      double det = a11 * a22 - a12 * a21;
      if (std::abs(det) < 1e-18) break;
      Vec2 delta{(-f1 * a22 + f2 * a12) / det, (-a11 * f2 + a21 * f1) / det};
      x = x + delta;
      if (euclid(delta) < 1e-14 * (1.0 + euclid(x))) break;
    }
    return x;
  };

  std::vector<Vec2> candidates;
  for (std::size_t i = 0; i + 1 < c1.points.size(); ++i) {
    Vec2 a = c1.points[i], b = c1.points[i + 1];
    for (std::size_t j = 0; j + 1 < c2.points.size(); ++j) {
      Vec2 c = c2.points[j], d = c2.points[j + 1];
      double den = cross(b - a, d - c);
      if (std::abs(den) < 1e-15) continue;
      double t = cross(c - a, d - c) / den;
      double u = cross(c - a, b - a) / den;
      if (t < 0 || t > 1 || u < 0 || u > 1) continue;
      candidates.push_back(a + (b - a) * t);
    }
  }

  IntersectionResult res;
  for (Vec2 cand : candidates) {
    Vec2 x = newton(cand);
    if (!win.contains(x, step)) continue;
    if (std::abs(bisector_residual(b1, x)) > tol || std::abs(bisector_residual(b2, x)) > tol)
      continue;
    bool merged = false;
    for (Vec2 seen : res.points)
      if (euclid(seen - x) < 2 * step) {
        merged = true;
        break;
      }
    if (!merged) res.points.push_back(x);
  }
  res.count = static_cast<int>(res.points.size());
  return res;
}

}  // namespace minkray
