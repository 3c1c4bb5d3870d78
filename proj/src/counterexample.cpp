#include "tangentrep/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tangentrep/errors.hpp"
#include "tangentrep/maxmin.hpp"
#include "tangentrep/tangent.hpp"

namespace tangentrep {

namespace {

// Minimum signed distance from x to the edges of a CCW triangle; positive inside.
double edge_margin(const TriangleDomain::Triangle& t, std::span<const double> x) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const auto& p = t[i];
    const auto& q = t[(i + 1) % 3];
    const double ex = q[0] - p[0];
    const double ey = q[1] - p[1];
    m = std::min(m, (ex * (x[1] - p[1]) - ey * (x[0] - p[0])) / std::hypot(ex, ey));
  }
  return m;
}

ConvexDomain as_polygon(const TriangleDomain::Triangle& t) {
  return ConvexDomain::polygon({t[0], t[1], t[2]});
}

}  // namespace

const TriangleDomain::Triangle& TriangleDomain::triangle(int which) {
  switch (which) {
    case 1: return delta1;
    case 2: return delta2;
    case 3: return delta3;
    default: throw Error("triangle index must be 1, 2 or 3");
  }
}

std::array<double, 3> TriangleDomain::barycentric(const Triangle& t, std::span<const double> x) {
  require_dim(2, x.size());
  const double det = (t[1][1] - t[2][1]) * (t[0][0] - t[2][0]) + (t[2][0] - t[1][0]) * (t[0][1] - t[2][1]);
  const double l0 = ((t[1][1] - t[2][1]) * (x[0] - t[2][0]) + (t[2][0] - t[1][0]) * (x[1] - t[2][1])) / det;
  const double l1 = ((t[2][1] - t[0][1]) * (x[0] - t[2][0]) + (t[0][0] - t[2][0]) * (x[1] - t[2][1])) / det;
  return {l0, l1, 1.0 - l0 - l1};
}

bool TriangleDomain::in_triangle(int which, std::span<const double> x, double margin) {
  const auto l = barycentric(triangle(which), x);
  return l[0] >= margin && l[1] >= margin && l[2] >= margin;
}

bool TriangleDomain::contains(std::span<const double> x) {
  return in_triangle(1, x) || in_triangle(2, x) || in_triangle(3, x);
}

Domain TriangleDomain::as_domain() {
  return Domain::union_of({as_polygon(delta1), as_polygon(delta2), as_polygon(delta3)});
}

ScalarField triangle_counterexample_field() {
  auto vg = [](std::span<const double> x) {
    if (TriangleDomain::in_triangle(2, x)) return ValueGradient{x[1] * x[1], {0.0, 2.0 * x[1]}};
    return ValueGradient{0.0, {0.0, 0.0}};
  };
  auto value = [vg](std::span<const double> x) { return vg(x).value; };
  return ScalarField("triangle_counterexample_f", 2, value, vg,
                     "C1 on Omega: both pieces and their gradients vanish on the shared edge x2 = 0");
}

std::vector<std::string> counterexample_notes() {
  return {
      "D1 = {(-1,0),(-1,1),(0,0)}: the mirror image of D2 across the x2-axis. A vertex (-1,-1) would place D1 "
      "below the x1-axis and b = (-a1, a2) outside Omega, so (-1,1) is used.",
      "A family whose minimum at a is positive can only contain sites in D2, because every plane from "
      "D1 u D3 vanishes identically.",
  };
}

ObstructionReport obstruction_certificate(std::span<const double> a, int site_resolution) {
  require_dim(2, a.size());
  if (!(edge_margin(TriangleDomain::delta2, a) >= 1e-6)) {
    throw PointNotInInterior("a must lie inside D2 with margin 1e-6");
  }
  const ScalarField f = triangle_counterexample_field();
  ObstructionReport r;
  r.a = Point(a.begin(), a.end());
  r.b = {-a[0], a[1]};
  r.b_in_delta1 = TriangleDomain::in_triangle(1, r.b);
  r.f_a = f.value(r.a);
  r.f_b = f.value(r.b);

  const Point left{-0.5, 0.5};
  const Point right{0.5, 0.5};
  const Point mid{0.0, 0.5};
  r.omega_nonconvex = TriangleDomain::contains(left) && TriangleDomain::contains(right) && !TriangleDomain::contains(mid);

  const std::vector<Point> sites = sample_grid(TriangleDomain::as_domain(), site_resolution);
  r.site_count = sites.size();
  r.positive_sites_in_delta2 = true;
  r.zero_planes_off_delta2 = true;
  for (const Point& t : sites) {
    const TangentPlane g = tangent_plane(f, t);
    const double ga = plane_eval(g, r.a);
    const double gb = plane_eval(g, r.b);
    r.max_site_discrepancy = std::max(r.max_site_discrepancy, std::abs(ga - gb));
    const bool in_d2 = TriangleDomain::in_triangle(2, t);
    if (ga > 0.0) {
      ++r.positive_sites;
      if (!in_d2) r.positive_sites_in_delta2 = false;
    }
    if (!in_d2 && ga != 0.0) r.zero_planes_off_delta2 = false;
    r.sites.push_back(SitePair{t, ga, gb});
  }
  r.no_separating_representation =
      r.b_in_delta1 && r.max_site_discrepancy <= 1e-12 && r.f_a > r.f_b && r.omega_nonconvex;
  r.notes = counterexample_notes();
  return r;
}

DemoReport failed_representation_demo(int resolution) {
  if (resolution < 11) throw Error("counterexample demo needs resolution >= 11");
  const ScalarField f = triangle_counterexample_field();
  const Domain omega = TriangleDomain::as_domain();

  DemoReport r;
  r.resolution = resolution;
  r.a = {0.7, 0.3};
  r.b = {-0.7, 0.3};
  r.f_a = f.value(r.a);
  r.f_b = f.value(r.b);

  const MaxMinRepresentation rep = MaxMinRepresentation::build(f, omega, sample_grid(omega, resolution));
  r.rep_a = rep.eval(r.a);
  r.rep_b = rep.eval(r.b);
  r.rep_gap = std::abs(r.rep_a - r.rep_b);
  r.worst_error = std::max(std::abs(r.rep_a - r.f_a), std::abs(r.rep_b - r.f_b));

  // Convex control: the same f on D2 alone.
  const Domain d2 = as_polygon(TriangleDomain::delta2);
  const MaxMinRepresentation rep2 = MaxMinRepresentation::build(f, d2, sample_grid(d2, resolution));
  for (const Point& x : sample_grid(d2, 2 * resolution - 1)) {
    if (edge_margin(TriangleDomain::delta2, x) < 1e-6) continue;
    r.convex_control_error = std::max(r.convex_control_error, std::abs(rep2.eval(x) - f.value(x)));
  }

  // Affine control on the non-convex Omega.
  const ScalarField affine = ScalarField::from_expression(parse("0.5*x1 - 0.25*x2 + 0.125", 2));
  const MaxMinRepresentation rep_aff = MaxMinRepresentation::build(affine, omega, sample_grid(omega, resolution));
  for (const Point& x : sample_grid(omega, 2 * resolution - 1)) {
    r.affine_control_error = std::max(r.affine_control_error, std::abs(rep_aff.eval(x) - affine.value(x)));
  }
  r.notes = counterexample_notes();
  return r;
}

}  // namespace tangentrep
