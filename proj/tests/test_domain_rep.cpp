#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "tangentrep/domain_rep.hpp"
#include "tangentrep/errors.hpp"

using namespace tangentrep;

namespace {

double phi_at(const ImplicitDomain2D& d, double x, double y) { return d.phi.value(Point{x, y}); }

// Dense marching along the ray with step diag/16384, then bisection.
Point dense_exit(const ImplicitDomain2D& d, Point a, Point dir) {
  const double step = std::hypot(d.bbox.hi[0] - d.bbox.lo[0], d.bbox.hi[1] - d.bbox.lo[1]) / 16384.0;
  double s = 0.0;
  while (phi_at(d, a[0] + (s + step) * dir[0], a[1] + (s + step) * dir[1]) <= 0.0) s += step;
  double lo = s;
  double hi = s + step;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phi_at(d, a[0] + mid * dir[0], a[1] + mid * dir[1]) <= 0.0 ? lo : hi) = mid;
  }
  return {a[0] + lo * dir[0], a[1] + lo * dir[1]};
}

}  // namespace

TEST_CASE("boundary half-planes of the unit disk") {
  const auto disk = unit_disk_domain();
  const HalfSpace q = boundary_halfspace(disk, Point{1.0, 0.0});
  CHECK(q.normal[0] == doctest::Approx(1.0));
  CHECK(std::abs(q.normal[1]) <= 1e-15);
  CHECK(q.offset == doctest::Approx(1.0));
  CHECK(q.contains(Point{1.0, 5.0}));
  CHECK_FALSE(q.contains(Point{1.0 + 1e-9, 0.0}));

  const HalfSpace top = boundary_halfspace(disk, Point{0.0, 1.0});
  CHECK(top.normal[1] == doctest::Approx(1.0));
  CHECK(top.offset == doctest::Approx(1.0));
}

TEST_CASE("peanut apex normal matches finite differences") {
  const auto peanut = peanut_domain();
  const double apex = std::sqrt(0.49 + std::sqrt(0.8));
  const Point x0{apex, 0.0};
  const HalfSpace q = boundary_halfspace(peanut, x0);
  CHECK(q.normal[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(q.normal[1]) <= 1e-14);
  const auto fd = oracle::fd_gradient([&](std::span<const double> x) { return peanut.phi.value(x); }, x0);
  const double n = std::hypot(fd[0], fd[1]);
  CHECK(std::abs(q.normal[0] - fd[0] / n) <= 1e-6);
  CHECK(std::abs(q.normal[1] - fd[1] / n) <= 1e-6);
}

TEST_CASE("boundary_halfspace error paths") {
  const auto disk = unit_disk_domain();
  CHECK_THROWS_AS(boundary_halfspace(disk, Point{0.5, 0.0}), NotOnBoundary);
  const ImplicitDomain2D ring{ScalarField::from_expression(parse("(x1^2 + x2^2 - 1)^2", 2)),
                              Box{{-2.0, -2.0}, {2.0, 2.0}}};
  CHECK_THROWS_AS(boundary_halfspace(ring, Point{1.0, 0.0}), DegenerateGradient);
}

TEST_CASE("ray_exit examples") {
  const auto disk = unit_disk_domain();
  const Direction east = Direction::normalized(Point{1.0, 0.0});
  for (double start : {0.0, 0.5}) {
    const Point e = ray_exit(disk, Point{start, 0.0}, east);
    CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(e[1] == 0.0);
    CHECK(std::abs(phi_at(disk, e[0], e[1])) <= 1e-10);
  }
  // Starting on the boundary and pointing out.
  const Point same = ray_exit(disk, Point{1.0, 0.0}, east);
  CHECK(same == Point{1.0, 0.0});

  const auto peanut = peanut_domain();
  const Point got = ray_exit(peanut, Point{-0.7, 0.0}, east);
  const Point want = dense_exit(peanut, {-0.7, 0.0}, {1.0, 0.0});
  CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-9));
  CHECK(got[0] == doctest::Approx(std::sqrt(0.49 + std::sqrt(0.8))).epsilon(1e-9));

  for (int k = 0; k < 16; ++k) {
    const double th = 2 * std::numbers::pi * k / 16;
    const Point dir{std::cos(th), std::sin(th)};
    const Point g = ray_exit(peanut, Point{0.7, 0.1}, Direction::normalized(dir));
    const Point w = dense_exit(peanut, {0.7, 0.1}, dir);
    CHECK(std::hypot(g[0] - w[0], g[1] - w[1]) <= 1e-8);
  }
}

TEST_CASE("ray_exit error paths") {
  const ImplicitDomain2D half{ScalarField::from_expression(parse("x1 - 10", 2)), Box{{-1.0, -1.0}, {1.0, 1.0}}};
  CHECK_THROWS_AS(ray_exit(half, Point{0.0, 0.0}, Direction::normalized(Point{1.0, 0.0})), RayEscapesBoundingBox);
  CHECK_THROWS_AS(ray_exit(unit_disk_domain(), Point{2.0, 0.0}, Direction::normalized(Point{1.0, 0.0})),
                  DomainError);
}

TEST_CASE("disk representation from one base point") {
  const auto disk = unit_disk_domain();
  const BooleanDomainRep rep = build_domain_rep(disk, 3, 8);
  REQUIRE(rep.bases.size() == 1);
  CHECK(rep.bases[0] == Point{0.0, 0.0});
  REQUIRE(rep.clauses.size() == 1);
  CHECK(rep.clauses[0].size() == 8);
  CHECK(rep.halfspaces.size() == 8);
  for (const auto& q : rep.halfspaces) CHECK(std::abs(std::hypot(q.anchor[0], q.anchor[1]) - 1.0) <= 1e-9);
  CHECK(member(rep, Point{0.0, 0.0}));
  CHECK_FALSE(member(rep, Point{1.1, 0.0}));
  // Convex domain: the single clause contains the disk.
  for (double x : oracle::linspace(-1.0, 1.0, 41)) {
    for (double y : oracle::linspace(-1.0, 1.0, 41)) {
      if (x * x + y * y <= 1.0) CHECK(member(rep, Point{x, y}));
    }
  }
}

TEST_CASE("disk agreement outside the discretization band") {
  const auto disk = unit_disk_domain();
  for (int rays : {16, 64}) {
    const BooleanDomainRep rep = build_domain_rep(disk, 3, rays);
    const double band = 2 * std::numbers::pi / rays;
    for (double x : oracle::linspace(-1.25, 1.25, 61)) {
      for (double y : oracle::linspace(-1.25, 1.25, 61)) {
        const double r = std::hypot(x, y);
        if (std::abs(r - 1.0) <= band) continue;
        CHECK(member(rep, Point{x, y}) == (r <= 1.0));
      }
    }
  }
}

TEST_CASE("peanut representation") {
  const auto peanut = peanut_domain();
  const BooleanDomainRep rep = build_domain_rep(peanut, 11, 32);
  CHECK_FALSE(member(rep, Point{0.0, 0.9}));
  CHECK(member(rep, Point{0.7, 0.0}));
  CHECK(member(rep, Point{-0.7, 0.0}));
  for (const auto& c : rep.clauses) {
    CHECK_FALSE(c.empty());
    for (auto i : c) CHECK(i < rep.halfspaces.size());
  }
  const DomainMembership mem(rep);
  for (std::size_t c = 0; c < rep.clauses.size(); ++c) {
    CHECK(peanut.phi.value(rep.bases[c]) <= -kBaseInset);
    CHECK(mem.in_clause(c, rep.bases[c]));
    CHECK(mem.member(rep.bases[c]));
  }
}

TEST_CASE("peanut clauses stay inside the banded domain") {
  const auto peanut = peanut_domain();
  const BooleanDomainRep rep = build_domain_rep(peanut, 11, 64);
  const DomainMembership mem(rep);
  const auto poly = boundary_polyline(peanut, Point{0.0, 0.0}, 2048);
  std::size_t outside = 0;
  for (double x : oracle::linspace(-1.5, 1.5, 61)) {
    for (double y : oracle::linspace(-1.0, 1.0, 41)) {
      const Point p{x, y};
      if (peanut.phi.value(p) <= 0.0 || distance_to_polyline(poly, p) <= 0.05) continue;
      for (std::size_t c = 0; c < rep.clauses.size(); ++c) {
        if (mem.in_clause(c, p)) ++outside;
      }
    }
  }
  CHECK(outside == 0);
}

TEST_CASE("agreement is monotone in ray count") {
  const auto peanut = peanut_domain();
  const auto poly = boundary_polyline(peanut, Point{0.0, 0.0}, 2048);
  double prev = -1.0;
  for (int rays : {8, 16, 32, 64}) {
    const AgreementStats s = agreement(peanut, build_domain_rep(peanut, 11, rays), 61, poly, 0.05);
    CHECK(s.tested > 0);
    CHECK(s.rate() >= prev);
    prev = s.rate();
  }
  CHECK(prev > 0.99);
}

TEST_CASE("backends agree on membership") {
  const auto peanut = peanut_domain();
  const DomainMembership mem(build_domain_rep(peanut, 9, 16));
  const auto* scalar = simd::kernels_for(simd::Backend::scalar);
  for (auto b : simd::available_backends()) {
    for (double x : oracle::linspace(-1.5, 1.5, 31)) {
      for (double y : oracle::linspace(-1.0, 1.0, 21)) {
        CHECK(mem.member(Point{x, y}, *simd::kernels_for(b)) == mem.member(Point{x, y}, *scalar));
      }
    }
  }
}

TEST_CASE("polyline distance") {
  const std::vector<std::array<double, 2>> square{{{0, 0}}, {{1, 0}}, {{1, 1}}, {{0, 1}}};
  CHECK(distance_to_polyline(square, Point{0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(distance_to_polyline(square, Point{2.0, 0.5}) == doctest::Approx(1.0));
  CHECK(distance_to_polyline(square, Point{-1.0, -1.0}) == doctest::Approx(std::sqrt(2.0)));
  // The closing edge (0,1)-(0,0) counts.
  CHECK(distance_to_polyline(square, Point{-0.25, 0.5}) == doctest::Approx(0.25));
}
