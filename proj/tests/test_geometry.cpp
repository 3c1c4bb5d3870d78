#include <random>

#include "doctest.h"
#include "tangentrep/errors.hpp"
#include "tangentrep/geometry.hpp"

using namespace tangentrep;

TEST_CASE("contains on closed domains") {
  const Domain ball = ConvexDomain::ball({0.0, 0.0}, 1.0);
  CHECK(ball.contains(Point{0.0, 0.0}));
  CHECK(ball.contains(Point{1.0, 0.0}));
  CHECK_FALSE(ball.contains(Point{1.0 + 1e-9, 0.0}));

  const Domain unit = ConvexDomain::box({0.0}, {1.0});
  CHECK(unit.contains(Point{1.0}));
  CHECK(unit.contains(Point{1.0 + 1e-13}));
  CHECK_FALSE(unit.contains(Point{1.0 + 1e-6}));
  CHECK_THROWS_AS(unit.contains(Point{0.5, 0.5}), DimensionError);

  const Domain tri = ConvexDomain::polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  CHECK(tri.contains(Point{0.5, 0.5}));
  CHECK_FALSE(tri.contains(Point{0.6, 0.6}));
}

TEST_CASE("domain constructors validate their invariants") {
  CHECK_THROWS_AS(ConvexDomain::box({1.0}, {0.0}), Error);
  CHECK_THROWS_AS(ConvexDomain::ball({0.0}, 0.0), Error);
  CHECK_THROWS_AS(ConvexDomain::polygon({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}}), Error);  // clockwise
  CHECK_THROWS_AS(ConvexDomain::polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 0.2}}), Error);
  CHECK_THROWS_AS(ConvexDomain::box({0, 0, 0, 0}, {1, 1, 1, 1}), Error);
}

TEST_CASE("sample_grid") {
  const auto line = sample_grid(ConvexDomain::box({0.0}, {1.0}), 3);
  REQUIRE(line.size() == 3);
  CHECK(line[0][0] == 0.0);
  CHECK(line[1][0] == 0.5);
  CHECK(line[2][0] == 1.0);

  const auto corners = sample_grid(ConvexDomain::box({0.0, 0.0}, {1.0, 1.0}), 2);
  CHECK(corners == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  // 9 grid points of [-1,1]^2, of which those with norm <= 1 remain.
  const auto disk = sample_grid(ConvexDomain::ball({0.0, 0.0}, 1.0), 3);
  CHECK(disk == std::vector<Point>{{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}});

  const std::vector<int> res{4, 2};
  CHECK(sample_grid(ConvexDomain::box({0.0, 0.0}, {3.0, 1.0}), res).size() == 8);
  CHECK_THROWS_AS(sample_grid(ConvexDomain::box({0.0}, {1.0}), 1), Error);
}

TEST_CASE("membership is convex and grid points are members") {
  std::mt19937_64 rng(3);
  const std::vector<Domain> domains{
      ConvexDomain::box({-1.0, 0.0}, {2.0, 0.5}), ConvexDomain::ball({0.5, -0.5, 1.0}, 0.75),
      ConvexDomain::polygon({{0.0, 0.0}, {2.0, 0.0}, {2.5, 1.0}, {1.0, 2.0}, {-0.5, 1.0}}),
      ConvexDomain::box({0.0}, {6.0})};
  for (const Domain& d : domains) {
    const auto pts = sample_grid(d, 9);
    CHECK_FALSE(pts.empty());
    for (const auto& p : pts) CHECK(d.contains(p));
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (int i = 0; i < 200; ++i) {
      const Point& x = pts[pick(rng)];
      const Point& y = pts[pick(rng)];
      for (double l : {0.25, 0.5, 0.75}) CHECK(d.contains(lerp(x, y, l)));
    }
  }
}

TEST_CASE("half-space anchors sit on their boundary") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double v[3] = {n(rng), n(rng), n(rng)};
    const HalfSpace q = HalfSpace::through(Point{n(rng), n(rng), n(rng)}, Direction::normalized(v));
    CHECK(std::abs(q.slack(q.anchor)) <= 1e-12);
    CHECK(q.contains(q.anchor));
  }
  const double tiny[2] = {1e-13, 0.0};
  CHECK_THROWS_AS(Direction::normalized(tiny), Error);
}

TEST_CASE("unions of convex pieces") {
  const Domain u = Domain::union_of(
      {ConvexDomain::box({0.0, 0.0}, {1.0, 1.0}), ConvexDomain::box({2.0, 0.0}, {3.0, 1.0})});
  CHECK_FALSE(u.is_convex());
  CHECK(u.contains(Point{2.5, 0.5}));
  CHECK_FALSE(u.contains(Point{1.5, 0.5}));
  const Box bb = u.bounding_box();
  CHECK(bb.lo == Point{0.0, 0.0});
  CHECK(bb.hi == Point{3.0, 1.0});
}
