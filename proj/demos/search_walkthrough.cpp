// Runs the monochromatic-copy search on a hexagonal norm against a few
// built-in colourings and prints what happened at each stage.

#include <cmath>
#include <iostream>

#include "minkray/mono_search.hpp"
#include "minkray/svg.hpp"

using namespace minkray;

int main() {
  const double h = std::sqrt(3.0) / 2.0;
  Norm hex = Norm::polygon({{1, 0}, {0.5, h}, {-0.5, h}, {-1, 0}, {-0.5, -h}, {0.5, -h}});
  std::cout << "hexagon: lambda = " << min_side_length(hex.polygonal())
            << ", admissible q < " << min_side_length(hex.polygonal()) /
                                          (1 + min_side_length(hex.polygonal()))
            << "\n\n";

  for (const char* spec : {"half-plane", "stripes:0.05", "checkerboard:0.5", "ring-parity"}) {
    ColouringOracle oracle = parse_oracle(spec, hex);
    SearchConfig cfg;
    cfg.q = 0.3;
    cfg.prefix = 8;
    SearchOutcome out = find_copy(hex, oracle, cfg);
    std::cout << oracle.name << ": " << out.status;
    if (out.found) {
      const CopyCertificate& c = *out.certificate;
      std::cout << " (colour " << c.colour << ", max deviation " << c.max_deviation << ")";
      int prepends = 0, records = 0;
      for (const json& e : out.trace["events"]) {
        if (e.value("event", "") == "prepend") ++prepends;
        if (e.value("event", "") == "record") ++records;
      }
      std::cout << " via " << records << " segment switch(es), " << prepends << " extension(s)";
    }
    std::cout << "\n";
  }
  return 0;
}
