#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tangentrep/errors.hpp"
#include "tangentrep/maxmin.hpp"

using namespace tangentrep;

namespace {

ScalarField field1(const char* text) { return ScalarField::from_expression(parse(text, 1)); }

std::vector<Point> points1(std::initializer_list<double> xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back(Point{x});
  return out;
}

std::vector<oracle::Plane> oracle_planes(const MaxMinRepresentation& rep) {
  std::vector<oracle::Plane> out;
  for (const auto& p : rep.planes()) out.push_back({p.site, p.grad, p.value});
  return out;
}

std::vector<std::vector<std::uint32_t>> rep_families(const MaxMinRepresentation& rep) {
  std::vector<std::vector<std::uint32_t>> fam;
  for (std::size_t u = 0; u < rep.size(); ++u) {
    const auto m = rep.members(u);
    fam.emplace_back(m.begin(), m.end());
  }
  return fam;
}

Point random_point(const Domain& d, std::mt19937_64& rng) {
  const Box bb = d.bounding_box();
  for (;;) {
    Point x(bb.lo.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::uniform_real_distribution<double>(bb.lo[k], bb.hi[k])(rng);
    if (d.contains(x)) return x;
  }
}

}  // namespace

TEST_CASE("site_set on x^2 and -x^2") {
  const auto sites = points1({-1, -0.5, 0, 0.5, 1});
  const SiteSet s = site_set(field1("x1^2"), sites, 2);
  CHECK(s.u_index == 2);
  CHECK(s.members == std::vector<std::uint32_t>{2});
  for (std::size_t u = 0; u < sites.size(); ++u) {
    CHECK(site_set(field1("-(x1^2)"), sites, u).members == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  }
  CHECK_THROWS_AS(site_set(field1("x1^2"), sites, 5), Error);
}

TEST_CASE("site sets match brute force and always contain their site") {
  for (const char* name : {"saddle", "sine_1d", "peanut_phi", "exp_1d"}) {
    const CatalogEntry e = catalog_entry(name);
    const auto sites = sample_grid(e.domain, e.domain.dim() == 1 ? 41 : 9);
    const auto planes = oracle::planes_from(
        [&](std::span<const double> x) {
          auto vg = e.field.eval_with_gradient(x);
          return std::pair{vg.value, vg.gradient};
        },
        sites);
    const auto brute = oracle::brute_families(planes, kDefaultTau);
    for (std::size_t u = 0; u < sites.size(); ++u) {
      const SiteSet s = site_set(e.field, sites, u);
      CHECK_MESSAGE(s.members == brute[u], name);
      CHECK(std::binary_search(s.members.begin(), s.members.end(), static_cast<std::uint32_t>(u)));
    }
  }
}

TEST_CASE("x^2 at resolution 5 has singleton families and interpolates") {
  const CatalogEntry bowl{field1("x1^2"), Domain(ConvexDomain::box({-1.0}, {1.0})), Curvature::strictly_convex};
  const auto rep = build_representation(bowl.field, bowl.domain, 5);
  REQUIRE(rep.size() == 5);
  CHECK(rep.pivot_count() == 0);
  for (std::size_t u = 0; u < 5; ++u) {
    CHECK(rep.family(u).members == std::vector<std::uint32_t>{static_cast<std::uint32_t>(u)});
    CHECK(rep_eval(rep, rep.planes()[u].site) == rep.planes()[u].value);
  }
  CHECK(rep.unique_family_count() == 5);
}

TEST_CASE("interpolation at sites for every catalog field on a convex domain") {
  for (auto name : catalog_names()) {
    const CatalogEntry e = catalog_entry(name);
    if (!e.domain.is_convex()) continue;
    const auto rep = build_representation(e.field, e.domain, 21);
    double worst = 0.0;
    for (std::size_t u = 0; u < rep.size(); ++u) {
      const auto& p = rep.planes()[u];
      worst = std::max(worst, std::abs(rep_eval(rep, p.site) - p.value) / (1.0 + std::abs(p.value)));
    }
    CHECK_MESSAGE(worst <= 1e-9, name);
  }
}

TEST_CASE("families are brute-force site sets plus valid pivot members") {
  const CatalogEntry e = catalog_entry("peanut_phi");
  const auto rep = build_representation(e.field, e.domain, 21);
  CHECK(rep.pivot_count() > 0);
  const auto planes = oracle_planes(rep);
  std::vector<oracle::Plane> site_planes(planes.begin(), planes.begin() + static_cast<long>(rep.size()));
  const auto brute = oracle::brute_families(site_planes, kDefaultTau);
  for (std::size_t u = 0; u < rep.size(); ++u) {
    const auto m = rep.members(u);
    std::vector<std::uint32_t> grid_part;
    for (auto i : m) {
      if (i < rep.size()) grid_part.push_back(i);
      // Every pivot member lies on or above f at the owning site.
      const double fu = planes[u].value;
      CHECK(planes[i].at(planes[u].site) >= fu - kDefaultTau * (1 + std::abs(fu)));
    }
    CHECK(grid_part == brute[u]);
  }
  for (std::size_t i = rep.size(); i < rep.plane_count(); ++i) CHECK(e.domain.contains(rep.planes()[i].site));
}

TEST_CASE("rep_eval equals brute-force maximin") {
  std::mt19937_64 rng(99);
  for (auto [name, res] : {std::pair{"sine_1d", 31}, {"saddle", 9}, {"peanut_phi", 11}, {"negative_bowl", 7}}) {
    const CatalogEntry e = catalog_entry(name);
    const auto rep = build_representation(e.field, e.domain, res);
    const auto planes = oracle_planes(rep);
    const auto fam = rep_families(rep);
    for (int i = 0; i < 200; ++i) {
      const Point x = random_point(e.domain, rng);
      // The oracle sums plane terms in a different order, hence the rounding slack.
      const double want = oracle::brute_maximin(planes, fam, x);
      CHECK_MESSAGE(std::abs(rep_eval(rep, x) - want) <= 1e-14 * (1 + std::abs(want)), name);
    }
  }
}

TEST_CASE("backends agree bit for bit on rep_eval") {
  const CatalogEntry e = catalog_entry("saddle");
  const auto rep = build_representation(e.field, e.domain, 15);
  const auto* scalar = simd::kernels_for(simd::Backend::scalar);
  REQUIRE(scalar != nullptr);
  std::mt19937_64 rng(5);
  for (auto b : simd::available_backends()) {
    const auto* k = simd::kernels_for(b);
    for (int i = 0; i < 100; ++i) {
      const Point x = random_point(e.domain, rng);
      CHECK(rep.eval(x, *k) == rep.eval(x, *scalar));
    }
  }
}

TEST_CASE("convex and concave reductions") {
  for (const char* name : {"quadratic_bowl", "exp_1d", "half_square_1d", "negative_bowl"}) {
    const CatalogEntry e = catalog_entry(name);
    const int res = e.domain.dim() == 1 ? 41 : 11;
    const auto sites = sample_grid(e.domain, res);
    const auto rep = MaxMinRepresentation::build(e.field, e.domain, sites);
    const Extremum mode = e.curvature == Curvature::strictly_concave ? Extremum::inf : Extremum::sup;
    for (const Point& x : sample_grid(e.domain, e.domain.dim() == 1 ? 101 : 31)) {
      CHECK_MESSAGE(std::abs(rep_eval(rep, x) - extremal_eval(e.field, sites, x, mode)) <= 1e-12, name);
    }
  }
}

TEST_CASE("PlaneEnvelope over x^2 tangents") {
  const auto planes = tangent_planes(field1("x1^2"), points1({-1, 0, 1}));
  const PlaneEnvelope env(planes);
  CHECK(env.size() == 3);
  // Tangents -2x-1, 0, 2x-1 at x = 0.25.
  CHECK(env.eval(Point{0.25}, Extremum::sup) == 0.0);
  CHECK(env.eval(Point{0.25}, Extremum::inf) == -1.5);
}

TEST_CASE("sine error shrinks with resolution") {
  const CatalogEntry e = catalog_entry("sine_1d");
  const auto grid = sample_grid(e.domain, 501);
  double prev = 0.0;
  for (int res : {26, 51, 101}) {
    const auto rep = build_representation(e.field, e.domain, res);
    double err = 0.0;
    for (const Point& x : grid) err = std::max(err, std::abs(rep_eval(rep, x) - e.field.value(x)));
    if (prev > 0.0) CHECK(prev / err >= 1.5);
    prev = err;
  }
}

TEST_CASE("rep_eval error paths") {
  const CatalogEntry e = catalog_entry("quadratic_bowl");
  const auto rep = build_representation(e.field, e.domain, 5);
  CHECK_THROWS_AS(rep_eval(rep, Point{2.0, 0.0}), DomainError);
  CHECK_THROWS_AS(rep_eval(rep, Point{0.0}), DimensionError);
  CHECK_THROWS_AS(MaxMinRepresentation::build(e.field, e.domain, {Point{3.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(MaxMinRepresentation::build(e.field, e.domain, {}), Error);
}

TEST_CASE("from_parts round trip and validation") {
  const CatalogEntry e = catalog_entry("peanut_phi");
  const auto rep = build_representation(e.field, e.domain, 9);
  std::vector<SiteSet> fams;
  for (std::size_t u = 0; u < rep.size(); ++u) fams.push_back(rep.family(u));
  const auto copy = MaxMinRepresentation::from_parts(rep.domain(), rep.planes(), fams, rep.tau());
  CHECK(copy.size() == rep.size());
  CHECK(copy.pivot_count() == rep.pivot_count());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Point x = random_point(e.domain, rng);
    CHECK(copy.eval(x) == rep.eval(x));
  }

  auto bad = fams;
  bad[0].members = {1};
  CHECK_THROWS_AS(MaxMinRepresentation::from_parts(rep.domain(), rep.planes(), bad, rep.tau()), Error);
  bad = fams;
  bad[0].members.push_back(static_cast<std::uint32_t>(rep.plane_count()));
  CHECK_THROWS_AS(MaxMinRepresentation::from_parts(rep.domain(), rep.planes(), bad, rep.tau()), Error);
  bad = fams;
  bad[1].u_index = 0;
  CHECK_THROWS_AS(MaxMinRepresentation::from_parts(rep.domain(), rep.planes(), bad, rep.tau()), Error);
  CHECK_THROWS_AS(MaxMinRepresentation::from_parts(rep.domain(), rep.planes(), fams, -1.0), Error);
}

TEST_CASE("site sets grow with tau") {
  const CatalogEntry e = catalog_entry("saddle");
  const auto sites = sample_grid(e.domain, 9);
  for (std::size_t u = 0; u < sites.size(); u += 7) {
    std::vector<std::uint32_t> prev;
    for (double tau : {0.0, 1e-9, 1e-3, 1e-1, 1.0}) {
      const SiteSet s = site_set(e.field, sites, u, tau);
      CHECK(std::includes(s.members.begin(), s.members.end(), prev.begin(), prev.end()));
      prev = s.members;
    }
  }
}
