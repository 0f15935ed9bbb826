#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "minkray/distinct_distances.hpp"
#include "support/fixtures.hpp"
#include "support/gauge_oracle.hpp"

using namespace minkray;
using namespace minkray::testing;

namespace {

// Random sequence contracting toward y in the given norm, distances scaled
// exactly via the norm itself.
ContractingSequence random_contracting(const Norm& n, Vec2 y, int count, std::mt19937_64& rng) {
  ContractingSequence cs;
  cs.y = y;
  double d = uniform(rng, 0.5, 2.0);
  for (int i = 0; i < count; ++i) {
    double a = uniform(rng, 0, 2 * M_PI);
    Vec2 dir{std::cos(a), std::sin(a)};
    dir = dir / n.eval(dir);
    cs.pts.push_back(y + dir * d);
    d *= uniform(rng, 0.15, 1.0 / 3.0);
  }
  return cs;
}

// Point at euclidean distance r from the origin-centred point y and distance
// D from p (two-circle intersection; picks one of the two solutions).
Vec2 circle_circle(Vec2 y, double r, Vec2 p, double D) {
  Vec2 d = p - y;
  double L = euclid(d);
  double x = (L * L + r * r - D * D) / (2 * L);
  double h2 = r * r - x * x;
  REQUIRE(h2 >= 0);
  Vec2 ex = d / L;
  Vec2 ey = perp(ex);
  return y + ex * x + ey * std::sqrt(h2);
}

}  // namespace

TEST_CASE("select_contracting") {
  Norm l2 = Norm::lp(2);
  SECTION("exact geometric chain with explicit centre") {
    std::vector<Vec2> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({std::pow(1.0 / 3.0, i), 0.0});
    ContractingSequence cs = select_contracting(pts, l2, Vec2{0, 0});
    CHECK(cs.pts.size() == 6);
    for (std::size_t i = 0; i + 1 < cs.pts.size(); ++i)
      CHECK(l2.eval(cs.pts[i + 1] - cs.y) <= l2.eval(cs.pts[i] - cs.y) / 3.0 + 1e-12);
  }
  SECTION("slowly decaying points yield a shorter greedy chain") {
    std::vector<Vec2> pts;
    for (int i = 10; i >= 1; --i) pts.push_back({0.1 * i, 0.0});
    ContractingSequence cs = select_contracting(pts, l2);
    CHECK(cs.pts.size() >= 2);
    for (std::size_t i = 0; i + 1 < cs.pts.size(); ++i)
      CHECK(l2.eval(cs.pts[i + 1] - cs.y) <= l2.eval(cs.pts[i] - cs.y) / 3.0 + 1e-12);
  }
  SECTION("equally spaced collinear points have no accumulation at ratio 1/3") {
    std::vector<Vec2> pts = {{0, 0}, {1, 0}, {2, 0}};
    try {
      select_contracting(pts, l2);
      FAIL("expected no_accumulation");
    } catch (const Error& e) {
      CHECK(e.code() == errc::no_accumulation);
    }
  }
}

TEST_CASE("red_blue_filter") {
  Norm l2 = Norm::lp(2);
  std::mt19937_64 rng(808);
  SECTION("generic random input passes through unchanged") {
    for (int t = 0; t < 50; ++t) {
      ContractingSequence cs = random_contracting(l2, random_point(rng, -2, 2), 8, rng);
      RedBlueResult r = red_blue_filter(cs, l2);
      CHECK(r.points.size() == 8);
      CHECK(r.blue_count == 0);
      CHECK(pairwise_distances_distinct(r.points, l2));
    }
  }
  SECTION("a constructed equidistant pair drops one point") {
    Vec2 y{0, 0};
    Vec2 p1{1, 0};
    double d2 = 0.3, D = 1.0;
    Vec2 p2 = circle_circle(y, d2, p1, D);
    Vec2 p3 = circle_circle(y, d2 / 3.0, p1, D);
    ContractingSequence cs{y, {p1, p2, p3}};
    REQUIRE(euclid(p2 - p1) == Catch::Approx(D));
    REQUIRE(euclid(p3 - p1) == Catch::Approx(D));
    RedBlueResult r = red_blue_filter(cs, l2);
    CHECK(r.dropped == 1);
    CHECK(r.blue_count == 1);  // p1 saw a non-singleton class, so it goes blue
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0] == p2);
    CHECK(pairwise_distances_distinct(r.points, l2));
  }
  SECTION("single point is returned as-is") {
    ContractingSequence cs{{0, 0}, {{1, 1}}};
    RedBlueResult r = red_blue_filter(cs, l2);
    CHECK(r.points.size() == 1);
    CHECK(r.blue_count == 0);
  }
}

TEST_CASE("index property of contracting sequences") {
  // If two pairs are at (nearly) the same distance, the smaller indices of
  // the pairs must coincide.
  std::mt19937_64 rng(171);
  Norm hex = Norm::polygon(hexagon_vertices());
  for (int t = 0; t < 100; ++t) {
    ContractingSequence cs = random_contracting(hex, random_point(rng, -1, 1), 9, rng);
    const auto& p = cs.pts;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t k1 = i + 1; k1 < p.size(); ++k1)
        for (std::size_t j = 0; j < p.size(); ++j)
          for (std::size_t k2 = j + 1; k2 < p.size(); ++k2) {
            if (i == j) continue;
            double d1 = hex.eval(p[i] - p[k1]);
            double d2 = hex.eval(p[j] - p[k2]);
            CHECK(std::abs(d1 - d2) > 1e-9);
          }
  }
  SECTION("collisions sharing the smaller index do occur and are tolerated") {
    Norm l2 = Norm::lp(2);
    Vec2 y{0, 0}, p1{1, 0};
    Vec2 p2 = circle_circle(y, 0.3, p1, 1.0);
    Vec2 p3 = circle_circle(y, 0.1, p1, 1.0);
    ContractingSequence cs{y, {p1, p2, p3}};
    CHECK(euclid(p1 - p2) == Catch::Approx(euclid(p1 - p3)));
  }
}

TEST_CASE("brute force distinct-distance subsets") {
  Norm l2 = Norm::lp(2);
  SECTION("unit square corners admit only two points") {
    std::vector<Vec2> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto best = brute_force_distinct_subset(sq, l2);
    CHECK(best.size() == 2);
  }
  SECTION("three points at distances 1,2,3 all survive") {
    std::vector<Vec2> pts = {{0, 0}, {1, 0}, {3, 0}};
    auto best = brute_force_distinct_subset(pts, l2);
    CHECK(best.size() == 3);
  }
  SECTION("equilateral triangle keeps two") {
    std::vector<Vec2> pts = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    auto best = brute_force_distinct_subset(pts, l2);
    CHECK(best.size() == 2);
  }
  SECTION("too many points") {
    std::vector<Vec2> pts(21, Vec2{0, 0});
    CHECK_THROWS_AS(brute_force_distinct_subset(pts, l2), Error);
  }
}

TEST_CASE("filter output never beats the brute-force maximum") {
  std::mt19937_64 rng(2025);
  Norm l2 = Norm::lp(2);
  for (int t = 0; t < 30; ++t) {
    ContractingSequence cs = random_contracting(l2, {0, 0}, 7, rng);
    RedBlueResult r = red_blue_filter(cs, l2);
    auto best = brute_force_distinct_subset(cs.pts, l2);
    CHECK(r.points.size() <= best.size());
  }
}
