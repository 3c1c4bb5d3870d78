#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tangentrep/field.hpp"
#include "tangentrep/geometry.hpp"

namespace tangentrep {

/// The non-convex region Omega = D1 u D2 u D3 built from three triangles.
///
/// D1 is the mirror image of D2 across the x2-axis, so b = (-a1, a2) lies in
/// Omega whenever a lies in D2. Vertices are stored counter-clockwise.
struct TriangleDomain {
  using Triangle = std::array<std::array<double, 2>, 3>;

  static constexpr Triangle delta1{{{-1.0, 0.0}, {0.0, 0.0}, {-1.0, 1.0}}};
  static constexpr Triangle delta2{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}}};
  static constexpr Triangle delta3{{{-1.0, 0.0}, {0.0, -1.0}, {1.0, 0.0}}};

  /// Tie tolerance on barycentric coordinates.
  static constexpr double kTieTol = 1e-12;

  static const Triangle& triangle(int which);  // which in {1, 2, 3}

  /// Barycentric coordinates of x with respect to the given triangle.
  static std::array<double, 3> barycentric(const Triangle& t, std::span<const double> x);

  static bool in_triangle(int which, std::span<const double> x, double margin = -kTieTol);
  static bool contains(std::span<const double> x);
  static Domain as_domain();
};

/// f(x) = x2^2 on D2 and 0 on D1 u D3 (and 0 off Omega).
ScalarField triangle_counterexample_field();

struct SitePair {
  Point t;
  double g_a;
  double g_b;
};

struct ObstructionReport {
  Point a;
  Point b;
  bool b_in_delta1 = false;
  double f_a = 0.0;
  double f_b = 0.0;
  std::size_t site_count = 0;
  double max_site_discrepancy = 0.0;  // max_t |g_t(a) - g_t(b)|
  std::size_t positive_sites = 0;     // sites with g_t(a) > 0
  bool positive_sites_in_delta2 = false;
  bool zero_planes_off_delta2 = false;  // g_t(a) == 0 for every site t off D2
  bool omega_nonconvex = false;         // midpoint of (-0.5,0.5),(0.5,0.5) lies outside Omega
  bool no_separating_representation = false;
  std::vector<SitePair> sites;
  std::vector<std::string> notes;
};

/// Certifies g_t(a) == g_t(b) for every site t of a grid over Omega.
/// Throws PointNotInInterior unless a is inside D2 with margin 1e-6.
ObstructionReport obstruction_certificate(std::span<const double> a, int site_resolution = 41);

struct DemoReport {
  int resolution = 0;
  Point a;
  Point b;
  double f_a = 0.0;
  double f_b = 0.0;
  double rep_a = 0.0;
  double rep_b = 0.0;
  double rep_gap = 0.0;    // |rep(a) - rep(b)|
  double worst_error = 0.0;  // max(|rep(a) - f(a)|, |rep(b) - f(b)|)
  /// Convex control: f restricted to D2 alone, max |rep - f| over interior test points.
  double convex_control_error = 0.0;
  /// Affine control on Omega, max |rep - f| over test points.
  double affine_control_error = 0.0;
  std::vector<std::string> notes;
};

/// Builds the max-min representation on the non-convex Omega anyway and shows
/// it cannot tell a from b. Requires resolution >= 11.
DemoReport failed_representation_demo(int resolution);

/// Human-readable notes on how the triangle data were read.
std::vector<std::string> counterexample_notes();

}  // namespace tangentrep
