#include "tangentrep/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "tangentrep/counterexample.hpp"
#include "tangentrep/domain_rep.hpp"
#include "tangentrep/expr.hpp"
#include "tangentrep/field.hpp"
#include "tangentrep/io.hpp"
#include "tangentrep/legendre.hpp"
#include "tangentrep/maxmin.hpp"
#include "tangentrep/segment_lemmas.hpp"
#include "tangentrep/simd/kernels.hpp"
#include "tangentrep/tangent.hpp"

namespace tangentrep::verify {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Check {
  const char* module;
  const char* name;
  std::function<Outcome()> run;
};

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

Outcome at_most(double measured, double bound, const char* what) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s = %.3g (bound %.3g)", what, measured, bound);
  return {measured <= bound, buf};
}

Outcome count_zero(std::size_t failures, std::size_t total, const char* what) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu of %zu %s fail", failures, total, what);
  return {failures == 0, buf};
}

Point random_in(const Domain& d, std::mt19937_64& rng) {
  const Box bb = d.bounding_box();
  for (;;) {
    Point x(bb.lo.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::uniform_real_distribution<double>(bb.lo[k], bb.hi[k])(rng);
    if (d.contains(x)) return x;
  }
}

// Interior points stay 1e-3 away from the triangle edges, where the
// counterexample field switches pieces.
Point random_interior(const CatalogEntry& e, std::mt19937_64& rng) {
  for (;;) {
    Point x = random_in(e.domain, rng);
    if (e.field.name() != "triangle_counterexample_f") return x;
    for (int i = 1; i <= 3; ++i) {
      if (TriangleDomain::in_triangle(i, x, 1e-3)) return x;
    }
  }
}

std::vector<CatalogEntry> entries() {
  std::vector<CatalogEntry> out;
  for (auto name : catalog_names()) out.push_back(catalog_entry(name));
  return out;
}

std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x) {
  std::vector<double> g(x.size());
  Point p(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-5 * (1.0 + std::abs(x[i]));
    p[i] = x[i] + h;
    const double up = f.value(p);
    p[i] = x[i] - h;
    const double down = f.value(p);
    p[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

double ad_fd_mismatch(const ScalarField& f, std::span<const double> x) {
  const auto ad = f.eval_with_gradient(x).gradient;
  const auto fd = fd_gradient(f, x);
  double diff = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < ad.size(); ++i) {
    diff += (ad[i] - fd[i]) * (ad[i] - fd[i]);
    mag += ad[i] * ad[i];
  }
  return std::sqrt(diff) / (1.0 + std::sqrt(mag));
}

const char* kParsed[] = {"sin(x1)*exp(x2/3)", "x1^3 - 2*x1*x2 + x2^2", "log(2 + x1^2) * cos(x2)",
                         "sqrt(3 + x1 - x2) / (1.5 + sin(x1 * x2))"};

std::vector<Check> build_checks() {
  std::vector<Check> c;

  // expr_field
  c.push_back({"expr_field", "ad_matches_finite_differences", [] {
                 std::mt19937_64 rng(101);
                 double worst = 0.0;
                 for (const auto& e : entries()) {
                   for (int i = 0; i < 100; ++i) worst = std::max(worst, ad_fd_mismatch(e.field, random_interior(e, rng)));
                 }
                 const Domain box = ConvexDomain::box({-1.0, -1.0}, {1.0, 1.0});
                 for (const char* text : kParsed) {
                   const ScalarField f = ScalarField::from_expression(parse(text, 2));
                   for (int i = 0; i < 100; ++i) worst = std::max(worst, ad_fd_mismatch(f, random_in(box, rng)));
                 }
                 return at_most(worst, 1e-6, "max relative gradient mismatch");
               }});
  c.push_back({"expr_field", "print_parse_round_trip", [] {
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (const char* text : kParsed) {
                   const FieldExpr e = parse(text, 2);
                   ++total;
                   if (!(parse(e.to_string(), 2) == e)) ++bad;
                 }
                 return count_zero(bad, total, "expressions");
               }});
  c.push_back({"expr_field", "evaluation_is_pure", [] {
                 std::mt19937_64 rng(102);
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (const auto& e : entries()) {
                   for (int i = 0; i < 20; ++i) {
                     const Point x = random_interior(e, rng);
                     const auto a = e.field.eval_with_gradient(x);
                     const auto b = e.field.eval_with_gradient(x);
                     ++total;
                     if (std::memcmp(&a.value, &b.value, sizeof(double)) != 0 || a.gradient != b.gradient) ++bad;
                   }
                 }
                 return count_zero(bad, total, "repeat evaluations");
               }});

  // geometry
  c.push_back({"geometry", "convex_domains_closed_under_segments", [] {
                 std::mt19937_64 rng(103);
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (const auto& e : entries()) {
                   if (!e.domain.is_convex()) continue;
                   for (int i = 0; i < 200; ++i) {
                     const Point x = random_in(e.domain, rng);
                     const Point y = random_in(e.domain, rng);
                     for (double l : {0.25, 0.5, 0.75}) {
                       ++total;
                       if (!e.domain.contains(lerp(x, y, l))) ++bad;
                     }
                   }
                 }
                 return count_zero(bad, total, "segment points");
               }});
  c.push_back({"geometry", "sampled_points_in_domain", [] {
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (const auto& e : entries()) {
                   for (const Point& x : sample_grid(e.domain, e.domain.dim() == 1 ? 101 : 41)) {
                     ++total;
                     if (!e.domain.contains(x)) ++bad;
                   }
                 }
                 return count_zero(bad, total, "sampled points");
               }});
  c.push_back({"geometry", "halfspace_anchor_on_boundary", [] {
                 std::mt19937_64 rng(104);
                 std::normal_distribution<double> n(0.0, 1.0);
                 double worst = 0.0;
                 for (int i = 0; i < 1000; ++i) {
                   const Point a{n(rng), n(rng), n(rng)};
                   const HalfSpace h = HalfSpace::through(a, Direction::normalized(Point{n(rng), n(rng), n(rng)}));
                   worst = std::max(worst, std::abs(h.slack(a)));
                 }
                 return at_most(worst, 1e-12, "max |slack(anchor)|");
               }});

  // tangent
  c.push_back({"tangent", "tangency_at_sites", [] {
                 double worst = 0.0;
                 for (const auto& e : entries()) {
                   for (const Point& t : sample_grid(e.domain, e.domain.dim() == 1 ? 200 : 15)) {
                     const TangentPlane g = tangent_plane(e.field, t);
                     const double ft = e.field.value(t);
                     worst = std::max(worst, std::abs(plane_eval(g, t) - ft) / (1.0 + std::abs(ft)));
                   }
                 }
                 return at_most(worst, 1e-14, "max relative |g_t(t) - f(t)|");
               }});
  c.push_back({"tangent", "convex_and_concave_support", [] {
                 double worst = -1.0;
                 for (const auto& e : entries()) {
                   double sign = 0.0;
                   if (e.curvature == Curvature::strictly_convex) sign = 1.0;
                   if (e.curvature == Curvature::strictly_concave) sign = -1.0;
                   if (sign == 0.0) continue;
                   const int res = e.domain.dim() == 1 ? 101 : 21;
                   const auto grid = sample_grid(e.domain, res);
                   for (const auto& g : tangent_planes(e.field, grid)) {
                     for (const Point& x : grid) {
                       worst = std::max(worst, sign * (plane_eval(g, x) - e.field.value(x)));
                     }
                   }
                 }
                 return at_most(worst, 1e-9, "max support violation");
               }});

  // segment_lemmas
  c.push_back({"segment_lemmas", "lambda0_on_random_polynomials", [] {
                 std::mt19937_64 rng(105);
                 std::uniform_real_distribution<double> coef(-2.0, 2.0);
                 std::size_t bad = 0;
                 for (int trial = 0; trial < 100; ++trial) {
                   std::vector<double> cs(std::uniform_int_distribution<int>(1, 6)(rng));
                   for (double& v : cs) v = coef(rng);
                   const SegmentFunction h{[cs](double l) {
                                             double s = 0.0;
                                             for (std::size_t i = cs.size(); i-- > 0;) s = s * l + cs[i];
                                             return s;
                                           },
                                           [cs](double l) {
                                             double s = 0.0;
                                             for (std::size_t i = cs.size(); i-- > 1;) s = s * l + double(i) * cs[i];
                                             return s;
                                           }};
                   const auto r = lambda0(h);
                   const double l = r.lambda0;
                   const double d = h.derivative(l);
                   const double hl = h.value(l);
                   const double gap = hl - r.m * l - h.value(0.0);
                   bool ok = d * (-l) + hl <= h.value(0.0) + 1e-8 && d * (1 - l) + hl >= h.value(1.0) - 1e-8;
                   if (h.derivative(0.0) >= r.m) ok = ok && l == 0.0;
                   if (r.branch == Lambda0Branch::interior_root) {
                     ok = ok && std::abs(gap) <= 1e-12 && r.negative_witness.has_value() &&
                          h.value(*r.negative_witness) - r.m * *r.negative_witness - h.value(0.0) < 0.0;
                   }
                   if (!ok) ++bad;
                 }
                 return count_zero(bad, 100, "polynomials");
               }});
  c.push_back({"segment_lemmas", "pivot_site_on_random_segments", [] {
                 std::mt19937_64 rng(106);
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (const auto& e : entries()) {
                   if (!e.domain.is_convex()) continue;
                   for (int i = 0; i < 15; ++i) {
                     const Point a = random_in(e.domain, rng);
                     const Point b = random_in(e.domain, rng);
                     const PivotResult p = pivot_site(e.field, a, b);
                     ++total;
                     if (!(p.g_c_at_a <= p.f_a + 1e-8 && p.g_c_at_b >= p.f_b - 1e-8)) ++bad;
                   }
                 }
                 return count_zero(bad, total, "segments");
               }});

  // maxmin
  c.push_back({"maxmin", "site_in_own_family", [] {
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (const auto& e : entries()) {
                   const auto rep = build_representation(e.field, e.domain, e.domain.dim() == 1 ? 41 : 11);
                   for (std::size_t u = 0; u < rep.size(); ++u) {
                     const auto m = rep.members(u);
                     ++total;
                     if (!std::binary_search(m.begin(), m.end(), static_cast<std::uint32_t>(u))) ++bad;
                   }
                 }
                 return count_zero(bad, total, "families");
               }});
  c.push_back({"maxmin", "interpolation_at_sites", [] {
                 double worst = 0.0;
                 for (const auto& e : entries()) {
                   if (!e.domain.is_convex()) continue;
                   const auto rep = build_representation(e.field, e.domain, e.domain.dim() == 1 ? 81 : 21);
                   for (std::size_t u = 0; u < rep.size(); ++u) {
                     const auto& p = rep.planes()[u];
                     worst = std::max(worst, std::abs(rep_eval(rep, p.site) - p.value) / (1.0 + std::abs(p.value)));
                   }
                 }
                 return at_most(worst, 1e-9, "max relative site error");
               }});
  c.push_back({"maxmin", "error_shrinks_with_resolution", [] {
                 double worst_ratio = std::numeric_limits<double>::infinity();
                 for (const auto& e : entries()) {
                   if (!e.domain.is_convex() || e.curvature == Curvature::affine) continue;
                   const bool one_d = e.domain.dim() == 1;
                   const auto test = sample_grid(e.domain, one_d ? 1001 : 61);
                   double prev = 0.0;
                   for (int res : one_d ? std::vector<int>{26, 51, 101} : std::vector<int>{6, 11, 21}) {
                     const auto rep = build_representation(e.field, e.domain, res);
                     double err = 0.0;
                     for (const Point& x : test) err = std::max(err, std::abs(rep_eval(rep, x) - e.field.value(x)));
                     if (prev > 0.0) worst_ratio = std::min(worst_ratio, prev / err);
                     prev = err;
                   }
                 }
                 return Outcome{worst_ratio >= 1.5, fmt("min error ratio per doubling = %.3g (bound 1.5)", worst_ratio)};
               }});
  c.push_back({"maxmin", "convex_and_concave_reductions", [] {
                 double worst = 0.0;
                 for (const auto& e : entries()) {
                   Extremum mode;
                   if (e.curvature == Curvature::strictly_convex) mode = Extremum::sup;
                   else if (e.curvature == Curvature::strictly_concave) mode = Extremum::inf;
                   else continue;
                   const auto sites = sample_grid(e.domain, e.domain.dim() == 1 ? 51 : 11);
                   const auto rep = MaxMinRepresentation::build(e.field, e.domain, sites);
                   const PlaneEnvelope env(tangent_planes(e.field, sites));
                   for (const Point& x : sample_grid(e.domain, 101)) {
                     worst = std::max(worst, std::abs(rep_eval(rep, x) - env.eval(x, mode)));
                   }
                 }
                 return at_most(worst, 1e-12, "max |rep - extremal|");
               }});
  c.push_back({"maxmin", "site_sets_monotone_in_tau", [] {
                 const CatalogEntry e = catalog_entry("saddle");
                 const auto sites = sample_grid(e.domain, 9);
                 std::size_t bad = 0;
                 for (std::size_t u = 0; u < sites.size(); ++u) {
                   std::vector<std::uint32_t> prev;
                   for (double tau : {0.0, 1e-9, 1e-3, 1e-1}) {
                     const auto s = site_set(e.field, sites, u, tau);
                     if (!std::includes(s.members.begin(), s.members.end(), prev.begin(), prev.end())) ++bad;
                     prev = s.members;
                   }
                 }
                 return count_zero(bad, sites.size(), "sites");
               }});
  c.push_back({"maxmin", "backends_bitwise_equal", [] {
                 const CatalogEntry e = catalog_entry("peanut_phi");
                 const auto rep = build_representation(e.field, e.domain, 15);
                 const auto* scalar = simd::kernels_for(simd::Backend::scalar);
                 std::mt19937_64 rng(107);
                 std::size_t bad = 0;
                 for (auto b : simd::available_backends()) {
                   for (int i = 0; i < 200; ++i) {
                     const Point x = random_in(e.domain, rng);
                     if (rep.eval(x, *simd::kernels_for(b)) != rep.eval(x, *scalar)) ++bad;
                   }
                 }
                 return count_zero(bad, 200 * simd::available_backends().size(), "evaluations");
               }});

  // domain_rep
  c.push_back({"domain_rep", "base_points_are_members", [] {
                 const auto rep = build_domain_rep(peanut_domain(), 21, 32);
                 const DomainMembership m(rep);
                 std::size_t bad = 0;
                 for (std::size_t i = 0; i < rep.bases.size(); ++i) {
                   if (!m.in_clause(i, rep.bases[i])) ++bad;
                 }
                 return count_zero(bad, rep.bases.size(), "base points");
               }});
  c.push_back({"domain_rep", "disk_exact_outside_band", [] {
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (int rays : {8, 16, 32, 64}) {
                   const DomainMembership m(build_domain_rep(unit_disk_domain(), 3, rays));
                   const double band = 2 * std::numbers::pi / rays;
                   for (const Point& y : sample_grid(ConvexDomain::box({-1.25, -1.25}, {1.25, 1.25}), 101)) {
                     const double r = std::hypot(y[0], y[1]);
                     if (std::abs(r - 1.0) <= band) continue;
                     ++total;
                     if (m.member(y) != (r <= 1.0)) ++bad;
                   }
                 }
                 return count_zero(bad, total, "grid points");
               }});
  c.push_back({"domain_rep", "agreement_monotone_in_ray_count", [] {
                 const auto dom = peanut_domain();
                 const auto poly = boundary_polyline(dom, Point{0.0, 0.0}, 4096);
                 double prev = -1.0;
                 bool ok = true;
                 std::string rates;
                 for (int rays : {8, 16, 32, 64}) {
                   const double r = agreement(dom, build_domain_rep(dom, 21, rays), 101, poly, 0.05).rate();
                   ok = ok && r >= prev;
                   prev = r;
                   rates += fmt("%.5f ", r);
                 }
                 return Outcome{ok, "rates " + rates};
               }});
  c.push_back({"domain_rep", "clauses_inside_banded_domain", [] {
                 const auto dom = peanut_domain();
                 const auto rep = build_domain_rep(dom, 21, 64);
                 const DomainMembership m(rep);
                 const auto poly = boundary_polyline(dom, Point{0.0, 0.0}, 4096);
                 std::size_t bad = 0;
                 std::size_t total = 0;
                 for (const Point& y : sample_grid(ConvexDomain::box(dom.bbox.lo, dom.bbox.hi), 101)) {
                   if (dom.phi.value(y) <= 0.0 || distance_to_polyline(poly, y) <= 0.05) continue;
                   ++total;
                   for (std::size_t i = 0; i < rep.clauses.size(); ++i) {
                     if (m.in_clause(i, y)) {
                       ++bad;
                       break;
                     }
                   }
                 }
                 return count_zero(bad, total, "outside points");
               }});

  // counterexample
  c.push_back({"counterexample", "c1_gluing_on_shared_edge", [] {
                 const ScalarField f = triangle_counterexample_field();
                 std::size_t bad = 0;
                 for (int i = 0; i < 20; ++i) {
                   const Point x{i / 19.0, 0.0};
                   const auto vg = f.eval_with_gradient(x);
                   if (vg.value != 0.0 || vg.gradient[0] != 0.0 || vg.gradient[1] != 0.0) ++bad;
                 }
                 return count_zero(bad, 20, "edge points");
               }});
  c.push_back({"counterexample", "mirror_symmetry_of_planes", [] {
                 std::mt19937_64 rng(108);
                 double worst = 0.0;
                 for (int i = 0; i < 20; ++i) {
                   Point a;
                   do {
                     a = {std::uniform_real_distribution<double>(0.0, 1.0)(rng),
                          std::uniform_real_distribution<double>(0.0, 1.0)(rng)};
                   } while (!TriangleDomain::in_triangle(2, a, 1e-6));
                   worst = std::max(worst, obstruction_certificate(a, 21).max_site_discrepancy);
                 }
                 return at_most(worst, 1e-12, "max |g_t(a) - g_t(b)|");
               }});
  c.push_back({"counterexample", "representation_cannot_separate", [] {
                 const DemoReport d = failed_representation_demo(21);
                 const bool ok = d.rep_gap <= 1e-12 && d.worst_error >= 0.09 - 1e-9;
                 return Outcome{ok, fmt("rep gap %.3g", d.rep_gap) + fmt(", worst error %.6g", d.worst_error)};
               }});

  // legendre
  c.push_back({"legendre", "samples_recompute_and_match_planes", [] {
                 std::mt19937_64 rng(109);
                 double worst = 0.0;
                 for (const auto& e : entries()) {
                   const auto set = legendre_points(e.field, sample_grid(e.domain, e.domain.dim() == 1 ? 51 : 9));
                   for (const auto& s : set.samples) {
                     const Point x = random_in(e.domain, rng);
                     double px = 0.0;
                     for (std::size_t k = 0; k < x.size(); ++k) px += s.p[k] * x[k];
                     const double g = plane_eval(tangent_plane(e.field, s.t), x);
                     worst = std::max(worst, std::abs(px - s.H - g) / (1.0 + std::abs(g)));
                   }
                 }
                 return at_most(worst, 1e-13, "max relative dual/plane mismatch");
               }});
  c.push_back({"legendre", "self_duality_of_half_square", [] {
                 const auto e = catalog_entry("half_square_1d");
                 double worst = 0.0;
                 for (const auto& s : legendre_points(e.field, sample_grid(e.domain, 1001)).samples) {
                   worst = std::max(worst, std::abs(s.H - 0.5 * s.p[0] * s.p[0]));
                 }
                 return at_most(worst, 1e-12, "max |H - p^2/2|");
               }});
  c.push_back({"legendre", "round_trip_converges", [] {
                 const auto e = catalog_entry("half_square_1d");
                 const auto test = sample_grid(e.domain, 2001);
                 double prev = 0.0;
                 double worst_ratio = std::numeric_limits<double>::infinity();
                 for (int n : {101, 201, 401}) {
                   const auto set = legendre_points(e.field, sample_grid(e.domain, n));
                   const ConjugateEnvelope env(set.samples);
                   double err = 0.0;
                   for (const Point& x : test) err = std::max(err, std::abs(env.eval(x) - e.field.value(x)));
                   if (prev > 0.0) worst_ratio = std::min(worst_ratio, prev / err);
                   prev = err;
                 }
                 return Outcome{worst_ratio >= 1.8, fmt("min ratio per doubling = %.3g (bound 1.8)", worst_ratio)};
               }});
  c.push_back({"legendre", "gradient_map_injective_for_convex", [] {
                 std::size_t dup = 0;
                 for (const auto& e : entries()) {
                   if (e.curvature != Curvature::strictly_convex) continue;
                   dup += legendre_points(e.field, sample_grid(e.domain, e.domain.dim() == 1 ? 101 : 11))
                              .injectivity.duplicate_p;
                 }
                 return at_most(static_cast<double>(dup), 0.0, "duplicate p pairs");
               }});

  // cli
  c.push_back({"cli", "artifacts_are_deterministic", [] {
                 const auto e = catalog_entry("peanut_phi");
                 const auto a = io::to_json_string(io::to_json(build_representation(e.field, e.domain, 15)));
                 const auto b = io::to_json_string(io::to_json(build_representation(e.field, e.domain, 15)));
                 const auto d1 = io::to_json_string(io::to_json(build_domain_rep(peanut_domain(), 11, 16)));
                 const auto d2 = io::to_json_string(io::to_json(build_domain_rep(peanut_domain(), 11, 16)));
                 return Outcome{a == b && d1 == d2, a == b && d1 == d2 ? "byte-identical" : "outputs differ"};
               }});
  return c;
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = build_checks();
  return all;
}

}  // namespace

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
}

std::vector<CheckInfo> registry() {
  std::vector<CheckInfo> out;
  for (const auto& c : checks()) out.push_back({c.module, c.name});
  return out;
}

Report run(std::string_view module_filter) {
  Report report;
  for (const auto& c : checks()) {
    if (!module_filter.empty() && module_filter != c.module) continue;
    CheckResult r{c.module, c.name, false, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace tangentrep::verify
