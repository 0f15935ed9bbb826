#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"
#include "minkray/norm.hpp"
#include "minkray/ring_colouring.hpp"

namespace minkray {

/// A plane colouring. Oracles must be pure: the same point always gets the
/// same colour. The search only uses two-colour oracles.
struct ColouringOracle {
  std::string name;
  std::function<int(Vec2)> colour;

  int operator()(Vec2 p) const { return colour(p); }
};

inline ColouringOracle constant_oracle(int c = 0) {
  return {"constant:" + std::to_string(c), [c](Vec2) { return c; }};
}

/// Colour 1 where a*x + b*y + c > 0, else 0.
inline ColouringOracle half_plane_oracle(double a = 0, double b = 1, double c = 0) {
  std::ostringstream name;
  name << "half-plane:" << a << "," << b << "," << c;
  return {name.str(), [a, b, c](Vec2 p) { return a * p.x + b * p.y + c > 0 ? 1 : 0; }};
}

/// Parallel bands of the given width; angle is the band normal's direction
/// in radians (angle 0 means bands swept along the x-axis).
inline ColouringOracle stripes_oracle(double width, double angle = 0) {
  if (!(width > 0)) throw Error(errc::bad_input, "stripe width must be positive");
  std::ostringstream name;
  name << "stripes:" << width << "," << angle;
  double nx = std::cos(angle), ny = std::sin(angle);
  return {name.str(), [=](Vec2 p) {
            double t = std::floor((p.x * nx + p.y * ny) / width);
            return static_cast<int>(std::abs(std::fmod(t, 2.0)));
          }};
}

inline ColouringOracle checkerboard_oracle(double cell) {
  if (!(cell > 0)) throw Error(errc::bad_input, "cell size must be positive");
  std::ostringstream name;
  name << "checkerboard:" << cell;
  return {name.str(), [cell](Vec2 p) {
            double t = std::floor(p.x / cell) + std::floor(p.y / cell);
            return static_cast<int>(std::abs(std::fmod(t, 2.0)));
          }};
}

/// The ring colouring itself, with its countable palette.
inline ColouringOracle ring_oracle(const Norm& n, int rings = 24) {
  auto rc = std::make_shared<RingColouring>(
      build_ring_colouring(n, powers_of_two_sampler(), rings));
  return {"ring", [rc](Vec2 p) { return rc->colour(p); }};
}

/// Parity collapse of the ring colouring: a two-colouring.
inline ColouringOracle ring_parity_oracle(const Norm& n, int rings = 24) {
  auto rc = std::make_shared<RingColouring>(
      build_ring_colouring(n, powers_of_two_sampler(), rings));
  return {"ring-parity", [rc](Vec2 p) { return rc->colour(p) % 2; }};
}

/// Parses oracle specs like "half-plane", "half-plane:0,1,-0.3",
/// "stripes:0.05", "stripes:1,0.7853", "checkerboard:10", "constant:1",
/// "ring-parity". The norm is needed for ring-based oracles.
inline ColouringOracle parse_oracle(const std::string& spec, const Norm& n) {
  std::string head = spec, args;
  if (auto pos = spec.find(':'); pos != std::string::npos) {
    head = spec.substr(0, pos);
    args = spec.substr(pos + 1);
  }
  std::vector<double> v;
  if (!args.empty()) {
    std::istringstream in(args);
    std::string tok;
    while (std::getline(in, tok, ',')) v.push_back(std::stod(tok));
  }
  auto arg = [&](std::size_t i, double dflt) { return i < v.size() ? v[i] : dflt; };
  if (head == "constant") return constant_oracle(static_cast<int>(arg(0, 0)));
  if (head == "half-plane") return half_plane_oracle(arg(0, 0), arg(1, 1), arg(2, 0));
  if (head == "stripes") {
    if (v.empty()) throw Error(errc::bad_input, "stripes oracle needs a width");
    return stripes_oracle(v[0], arg(1, 0));
  }
  if (head == "checkerboard") {
    if (v.empty()) throw Error(errc::bad_input, "checkerboard oracle needs a cell size");
    return checkerboard_oracle(v[0]);
  }
  if (head == "ring") return ring_oracle(n, static_cast<int>(arg(0, 24)));
  if (head == "ring-parity") return ring_parity_oracle(n, static_cast<int>(arg(0, 24)));
  throw Error(errc::bad_input, "unknown oracle '" + spec + "'");
}

}  // namespace minkray
