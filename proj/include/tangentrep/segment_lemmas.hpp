#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tangentrep/field.hpp"
#include "tangentrep/geometry.hpp"

namespace tangentrep {

/// A differentiable h on [0, 1] together with h'.
struct SegmentFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

enum class Lambda0Branch { left_endpoint, right_endpoint, interior_root };

struct ScanNode {
  double lambda;
  double chord_gap;  // H(lambda) = h(lambda) - m*lambda - h(0)
};

struct Lambda0Result {
  double lambda0;
  Lambda0Branch branch;
  double m;  // h(1) - h(0)
  /// Scan node with H < 0 preceding the located root (interior branch only).
  std::optional<double> negative_witness;
  int refinements = 0;  // finer rescans needed (0, 1 or 2)
  std::vector<ScanNode> trace;
};

struct Lambda0Options {
  double tol = 1e-12;
  int cells = 4096;
  int max_refinements = 2;
  /// Slack allowed when re-verifying the two output inequalities.
  double verify_tol = 1e-8;
};

/// Finds lambda0 in [0, 1] with
///   h'(l)(-l) + h(l) <= h(0)   and   h'(l)(1 - l) + h(l) >= h(1).
/// Endpoints are tried first (exact >= comparisons against m = h(1) - h(0));
/// otherwise the first upward zero of the chord gap H is bracketed on a uniform
/// scan and bisected. Throws NoRootFound when no verified root exists.
Lambda0Result lambda0(const SegmentFunction& h, const Lambda0Options& options = {});

/// h(l) = f((1 - l) a + l b) and h'(l) = <grad f(...), b - a>.
SegmentFunction restrict_to_segment(const ScalarField& f, std::span<const double> a, std::span<const double> b);

struct PivotResult {
  Point c;
  Lambda0Result lambda;
  double g_c_at_a;
  double g_c_at_b;
  double f_a;
  double f_b;
};

/// A site c on [a, b] with g_c(a) <= f(a) and g_c(b) >= f(b).
PivotResult pivot_site(const ScalarField& f, std::span<const double> a, std::span<const double> b,
                       const Lambda0Options& options = {});

}  // namespace tangentrep
