#include "tangentrep/domain_rep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "tangentrep/errors.hpp"

namespace tangentrep {

namespace {

double bbox_diagonal(const Box& b) { return std::hypot(b.hi[0] - b.lo[0], b.hi[1] - b.lo[1]); }

Point along(std::span<const double> a, const Direction& d, double s) { return {a[0] + s * d[0], a[1] + s * d[1]}; }

Direction ray_direction(int k, int count) {
  const double angle = 2.0 * std::numbers::pi * k / count;
  const double v[2] = {std::cos(angle), std::sin(angle)};
  return Direction::normalized(v);
}

}  // namespace

ImplicitDomain2D unit_disk_domain() {
  ScalarField phi("unit_disk_phi", 2,
                  [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] - 1.0; },
                  [](std::span<const double> x) {
                    return ValueGradient{x[0] * x[0] + x[1] * x[1] - 1.0, {2.0 * x[0], 2.0 * x[1]}};
                  });
  return ImplicitDomain2D{std::move(phi), Box{{-1.25, -1.25}, {1.25, 1.25}}};
}

ImplicitDomain2D peanut_domain() {
  return ImplicitDomain2D{catalog("peanut_phi"), Box{{-1.5, -1.0}, {1.5, 1.0}}};
}

HalfSpace boundary_halfspace(const ImplicitDomain2D& dom, std::span<const double> x0) {
  require_dim(2, x0.size());
  const ValueGradient vg = dom.phi.eval_with_gradient(x0);
  if (!(std::abs(vg.value) <= kOnBoundaryTol)) {
    throw NotOnBoundary("phi = " + std::to_string(vg.value) + " at the requested boundary point");
  }
  if (!(norm(vg.gradient) >= kMinGradientNorm)) throw DegenerateGradient("grad phi vanishes at boundary point");
  return HalfSpace::through(Point(x0.begin(), x0.end()), Direction::normalized(vg.gradient));
}

Point ray_exit(const ImplicitDomain2D& dom, std::span<const double> a, const Direction& d) {
  require_dim(2, a.size());
  require_dim(2, d.dim());
  const ValueGradient at_a = dom.phi.eval_with_gradient(a);
  if (at_a.value > kExitTol) throw DomainError("ray origin lies outside the domain");
  if (std::abs(at_a.value) <= kExitTol && dot(at_a.gradient, d.coords()) > 0.0) return Point(a.begin(), a.end());

  const double diag = bbox_diagonal(dom.bbox);
  const double step = diag / 1024.0;
  double lo = 0.0;
  double hi = -1.0;
  for (int k = 1; k <= 1025; ++k) {
    const double s = k * step;
    if (dom.phi.value(along(a, d, s)) > 0.0) {
      hi = s;
      break;
    }
    lo = s;
  }
  if (hi < 0.0) throw RayEscapesBoundingBox("phi stays non-positive along the ray across the bounding box");

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = dom.phi.value(along(a, d, mid));
    if (std::abs(v) <= kExitTol) return along(a, d, mid);
    if (v > 0.0) hi = mid;
    else lo = mid;
  }
  return along(a, d, lo);
}

BooleanDomainRep build_domain_rep(const ImplicitDomain2D& dom, int base_resolution, int ray_count) {
  if (ray_count < 3) throw Error("ray_count must be at least 3");
  const Domain box = ConvexDomain::box(dom.bbox.lo, dom.bbox.hi);
  std::vector<Direction> rays;
  rays.reserve(ray_count);
  for (int k = 0; k < ray_count; ++k) rays.push_back(ray_direction(k, ray_count));

  BooleanDomainRep rep;
  std::map<std::array<long long, 4>, std::uint32_t> index;
  for (Point& a : sample_grid(box, base_resolution)) {
    if (!(dom.phi.value(a) <= -kBaseInset)) continue;
    std::vector<std::uint32_t> clause;
    clause.reserve(rays.size());
    for (const Direction& d : rays) {
      HalfSpace q = boundary_halfspace(dom, ray_exit(dom, a, d));
      const std::array<long long, 4> key{std::llround(q.anchor[0] * 1e9), std::llround(q.anchor[1] * 1e9),
                                         std::llround(q.normal[0] * 1e9), std::llround(q.normal[1] * 1e9)};
      auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(rep.halfspaces.size()));
      if (inserted) rep.halfspaces.push_back(std::move(q));
      clause.push_back(it->second);
    }
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    rep.clauses.push_back(std::move(clause));
    rep.bases.push_back(std::move(a));
  }
  return rep;
}

DomainMembership::DomainMembership(const BooleanDomainRep& rep) : rep_(rep), batch_(2) {
  batch_.reserve(rep.halfspaces.size());
  const double zero[2] = {0.0, 0.0};
  for (const HalfSpace& q : rep.halfspaces) batch_.push(zero, q.normal.coords(), -q.offset);
}

bool DomainMembership::member(std::span<const double> y, const simd::Kernels& k) const {
  require_dim(2, y.size());
  if (rep_.halfspaces.empty()) return false;
  thread_local std::vector<double> slack;
  slack.resize(batch_.size());
  batch_.eval(y, slack, k);
  const double ceiling = std::nextafter(kBoundaryTol, std::numeric_limits<double>::infinity());
  for (const auto& clause : rep_.clauses) {
    if (k.gather_max_until(slack.data(), clause.data(), clause.size(), ceiling) <= kBoundaryTol) return true;
  }
  return false;
}

bool DomainMembership::in_clause(std::size_t clause, std::span<const double> y) const {
  for (std::uint32_t i : rep_.clauses.at(clause)) {
    if (!rep_.halfspaces[i].contains(y)) return false;
  }
  return true;
}

bool member(const BooleanDomainRep& rep, std::span<const double> y) { return DomainMembership(rep).member(y); }

std::vector<std::array<double, 2>> boundary_polyline(const ImplicitDomain2D& dom, std::span<const double> center,
                                                     int count) {
  std::vector<std::array<double, 2>> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const Point p = ray_exit(dom, center, ray_direction(k, count));
    out.push_back({p[0], p[1]});
  }
  return out;
}

double distance_to_polyline(std::span<const std::array<double, 2>> poly, std::span<const double> y) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const double ex = q[0] - p[0];
    const double ey = q[1] - p[1];
    const double len2 = ex * ex + ey * ey;
    double s = len2 > 0.0 ? ((y[0] - p[0]) * ex + (y[1] - p[1]) * ey) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    best = std::min(best, std::hypot(y[0] - (p[0] + s * ex), y[1] - (p[1] + s * ey)));
  }
  return best;
}

AgreementStats agreement(const ImplicitDomain2D& dom, const BooleanDomainRep& rep, int grid,
                         std::span<const std::array<double, 2>> boundary, double band) {
  const DomainMembership m(rep);
  AgreementStats stats;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double y[2] = {grid_coord(dom.bbox.lo[0], dom.bbox.hi[0], i, grid),
                           grid_coord(dom.bbox.lo[1], dom.bbox.hi[1], j, grid)};
      if (distance_to_polyline(boundary, y) <= band) {
        ++stats.band_points;
        continue;
      }
      ++stats.tested;
      if (m.member(y) == (dom.phi.value(y) <= 0.0)) ++stats.agree;
    }
  }
  return stats;
}

}  // namespace tangentrep
