#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "minkray/geometry.hpp"

namespace minkray {

/// Minimal SVG writer for segments, polylines and point markers. Collects
/// primitives in plane coordinates and renders with a flipped y-axis.
class SvgCanvas {
 public:
  void add_segment(Segment s, const std::string& colour, double width = 0.02) {
    std::ostringstream os;
    os << "<line x1=\"" << s.a.x << "\" y1=\"" << -s.a.y << "\" x2=\"" << s.b.x << "\" y2=\""
       << -s.b.y << "\" stroke=\"" << colour << "\" stroke-width=\"" << width
       << "\" stroke-linecap=\"round\"/>";
    shapes_.push_back(os.str());
    grow(s.a);
    grow(s.b);
  }

  void add_polyline(const std::vector<Vec2>& pts, const std::string& colour,
                    double width = 0.02) {
    if (pts.empty()) return;
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << width
       << "\" points=\"";
    for (Vec2 p : pts) {
      os << p.x << "," << -p.y << " ";
      grow(p);
    }
    os << "\"/>";
    shapes_.push_back(os.str());
  }

  void add_point(Vec2 p, const std::string& colour, double r = 0.04) {
    std::ostringstream os;
    os << "<circle cx=\"" << p.x << "\" cy=\"" << -p.y << "\" r=\"" << r << "\" fill=\""
       << colour << "\"/>";
    shapes_.push_back(os.str());
    grow(p);
  }

  std::string render() const {
    double x0 = lo_.x, y0 = -hi_.y, w = hi_.x - lo_.x, h = hi_.y - lo_.y;
    if (shapes_.empty()) {
      x0 = y0 = -1;
      w = h = 2;
    }
    const double pad = 0.05 * std::max(w, h) + 0.1;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 - pad << " " << y0 - pad
       << " " << w + 2 * pad << " " << h + 2 * pad << "\">\n";
    for (const std::string& s : shapes_) os << "  " << s << "\n";
    os << "</svg>\n";
    return os.str();
  }

 private:
  void grow(Vec2 p) {
    lo_.x = std::min(lo_.x, p.x);
    lo_.y = std::min(lo_.y, p.y);
    hi_.x = std::max(hi_.x, p.x);
    hi_.y = std::max(hi_.y, p.y);
  }

  std::vector<std::string> shapes_;
  Vec2 lo_{1e300, 1e300};
  Vec2 hi_{-1e300, -1e300};
};

}  // namespace minkray
