// Traces lp bisectors of one point pair for several exponents and writes
// them into a single SVG, plus an intersection example.

#include <iostream>

#include "minkray/bisector.hpp"
#include "minkray/svg.hpp"
#include "minkray/io.hpp"

using namespace minkray;

int main() {
  const Vec2 y1{-1.5, -0.8}, y2{1.2, 1.9};
  const char* colours[] = {"#6a3dd4", "#3d6bd4", "#3dae6e", "#d4a13d"};
  SvgCanvas canvas;
  canvas.add_point(y1, "#222222", 0.1);
  canvas.add_point(y2, "#222222", 0.1);
  int i = 0;
  for (double p : {1.5, 2.0, 3.0, 8.0}) {
    Polyline line = trace_bisector(BisectorSpec::make(p, y1, y2), Window{}, 0.05);
    canvas.add_polyline(line.points, colours[i++ % 4], 0.04);
    std::cout << "p = " << p << ": " << line.points.size() << " trace points\n";
  }
  save_text_file("bisector_gallery.svg", canvas.render());

  BisectorSpec a = BisectorSpec::make(3, {-2, 0.5}, {2, -0.7});
  BisectorSpec b = BisectorSpec::make(3, {0.3, -2}, {-0.9, 2.2});
  IntersectionResult r = count_intersections(a, b, Window{}, 0.05);
  std::cout << "cubic bisector pair: " << r.count << " intersection(s)\n";
  std::cout << "wrote bisector_gallery.svg\n";
  return 0;
}
