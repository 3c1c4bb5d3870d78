#include "tangentrep/segment_lemmas.hpp"

#include <cmath>
#include <string>

#include "tangentrep/errors.hpp"
#include "tangentrep/tangent.hpp"

namespace tangentrep {

namespace {

struct Endpoints {
  double h0;
  double h1;
  double m;
};

bool satisfies_inequalities(const SegmentFunction& h, const Endpoints& e, double l, double slack) {
  const double hl = h.value(l);
  const double dl = h.derivative(l);
  return dl * (-l) + hl <= e.h0 + slack && dl * (1.0 - l) + hl >= e.h1 - slack;
}

// Bisects H on [lo, hi] with H(lo) < 0 <= H(hi) until |H| <= tol or the
// bracket cannot shrink further.
double bisect(const std::function<double(double)>& gap, double lo, double hi, double h_hi, double tol) {
  if (h_hi == 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double hm = gap(mid);
    if (std::abs(hm) <= tol) return mid;
    if (hm < 0.0) lo = mid;
    else hi = mid;
  }
  return hi;
}

}  // namespace

Lambda0Result lambda0(const SegmentFunction& h, const Lambda0Options& options) {
  if (options.cells < 2) throw Error("lambda0 needs at least 2 scan cells");
  const double h0 = h.value(0.0);
  const double h1 = h.value(1.0);
  const Endpoints ends{h0, h1, h1 - h0};
  const double m = ends.m;

  Lambda0Result result{0.0, Lambda0Branch::left_endpoint, m, std::nullopt, 0, {}};
  if (h.derivative(0.0) >= m) return result;
  if (h.derivative(1.0) >= m) {
    result.lambda0 = 1.0;
    result.branch = Lambda0Branch::right_endpoint;
    return result;
  }

  result.branch = Lambda0Branch::interior_root;
  auto gap = [&](double l) { return h.value(l) - m * l - ends.h0; };

  int cells = options.cells;
  for (int attempt = 0; attempt <= options.max_refinements; ++attempt, cells *= 4) {
    result.refinements = attempt;
    result.trace.clear();
    result.trace.reserve(static_cast<std::size_t>(cells) + 1);
    // H(0) = H(1) = 0 by construction.
    std::vector<double> values(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) {
      const double l = static_cast<double>(i) / cells;
      values[i] = (i == 0 || i == cells) ? 0.0 : gap(l);
      result.trace.push_back({l, values[i]});
    }

    bool seen_negative = false;
    for (int i = 1; i <= cells; ++i) {
      if (values[i] < 0.0) {
        seen_negative = true;
        continue;
      }
      if (!seen_negative) continue;
      // Bracket [i-1, i]: H(i-1) < 0 <= H(i).
      const double lo = static_cast<double>(i - 1) / cells;
      const double hi = static_cast<double>(i) / cells;
      const double root = bisect(gap, lo, hi, values[i], options.tol);
      if (satisfies_inequalities(h, ends, root, options.verify_tol)) {
        result.lambda0 = root;
        result.negative_witness = lo;
        return result;
      }
      // Degenerate zero with H' < 0: step past this cell and keep scanning for
      // the next crossing from below.
      seen_negative = false;
    }
  }
  throw NoRootFound("no verified upward zero of the chord gap after " + std::to_string(options.max_refinements) +
                    " refinements (m = " + std::to_string(m) + ")");
}

SegmentFunction restrict_to_segment(const ScalarField& f, std::span<const double> a, std::span<const double> b) {
  require_dim(a.size(), b.size());
  require_dim(static_cast<std::size_t>(f.dim()), a.size());
  Point pa(a.begin(), a.end());
  Point pb(b.begin(), b.end());
  Point dir(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) dir[i] = pb[i] - pa[i];
  auto value = [f, pa, pb](double l) { return f.value(lerp(pa, pb, l)); };
  auto derivative = [f, pa, pb, dir](double l) {
    const ValueGradient vg = f.eval_with_gradient(lerp(pa, pb, l));
    return dot(vg.gradient, dir);
  };
  return SegmentFunction{std::move(value), std::move(derivative)};
}

PivotResult pivot_site(const ScalarField& f, std::span<const double> a, std::span<const double> b,
                       const Lambda0Options& options) {
  const SegmentFunction h = restrict_to_segment(f, a, b);
  Lambda0Result lr = lambda0(h, options);
  Point c = lerp(a, b, lr.lambda0);
  const TangentPlane g = tangent_plane(f, c);
  PivotResult out{std::move(c), std::move(lr), plane_eval(g, a), plane_eval(g, b), f.value(a), f.value(b)};
  return out;
}

}  // namespace tangentrep
