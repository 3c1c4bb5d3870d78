#include "tangentrep/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tangentrep/errors.hpp"

namespace tangentrep {

double dot(std::span<const double> a, std::span<const double> b) {
  require_dim(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Point lerp(std::span<const double> a, std::span<const double> b, double lambda) {
  require_dim(a.size(), b.size());
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - lambda) * a[i] + lambda * b[i];
  return out;
}

Direction Direction::normalized(std::span<const double> v) {
  const double n = norm(v);
  if (!(n >= 1e-12)) throw Error("cannot normalize a vector of norm " + std::to_string(n));
  Point c(v.begin(), v.end());
  for (double& x : c) x /= n;
  return Direction(std::move(c));
}

HalfSpace HalfSpace::through(Point anchor, Direction outward_normal) {
  require_dim(outward_normal.dim(), anchor.size());
  const double offset = dot(outward_normal.coords(), anchor);
  return HalfSpace{std::move(anchor), std::move(outward_normal), offset};
}

double HalfSpace::slack(std::span<const double> y) const { return dot(normal.coords(), y) - offset; }

bool HalfSpace::contains(std::span<const double> y) const { return slack(y) <= kBoundaryTol; }

namespace {

void check_dim(std::size_t n) {
  if (n < 1 || n > 3) throw Error("domain dimension must be 1, 2 or 3, got " + std::to_string(n));
}

double cross(const std::array<double, 2>& o, const std::array<double, 2>& a,
             const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Signed distance of p from the directed edge a->b; positive on the left.
double edge_distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                     std::span<const double> p) {
  const double ex = b[0] - a[0];
  const double ey = b[1] - a[1];
  const double len = std::hypot(ex, ey);
  return (ex * (p[1] - a[1]) - ey * (p[0] - a[0])) / len;
}

}  // namespace

ConvexDomain ConvexDomain::box(Point lo, Point hi) {
  require_dim(lo.size(), hi.size());
  check_dim(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw Error("box requires lo < hi on every axis");
  }
  return ConvexDomain(Box{std::move(lo), std::move(hi)});
}

ConvexDomain ConvexDomain::ball(Point center, double radius) {
  check_dim(center.size());
  if (!(radius > 0.0)) throw Error("ball radius must be positive");
  return ConvexDomain(Ball{std::move(center), radius});
}

ConvexDomain ConvexDomain::polygon(std::vector<std::array<double, 2>> v) {
  const std::size_t n = v.size();
  if (n < 3) throw Error("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cross(v[i], v[(i + 1) % n], v[(i + 2) % n]);
    if (!(c > 0.0)) throw Error("polygon vertices must be strictly convex and counter-clockwise");
  }
  // Total turning of exactly one revolution rules out star polygons.
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    const auto& c = v[(i + 2) % n];
    const double a1 = std::atan2(b[1] - a[1], b[0] - a[0]);
    const double a2 = std::atan2(c[1] - b[1], c[0] - b[0]);
    double d = a2 - a1;
    while (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
    while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    turning += d;
  }
  if (std::abs(turning - 2 * std::numbers::pi) > 1e-6) throw Error("polygon is not simple");
  return ConvexDomain(Polygon{std::move(v)});
}

std::size_t ConvexDomain::dim() const {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) return s.lo.size();
        else if constexpr (std::is_same_v<T, Ball>) return s.center.size();
        else return 2;
      },
      shape_);
}

bool ConvexDomain::contains(std::span<const double> x) const {
  require_dim(dim(), x.size());
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < s.lo[i] - kBoundaryTol || x[i] > s.hi[i] + kBoundaryTol) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Ball>) {
          double d2 = 0.0;
          for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - s.center[i]) * (x[i] - s.center[i]);
          return std::sqrt(d2) <= s.radius + kBoundaryTol;
        } else {
          const auto& v = s.vertices;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (edge_distance(v[i], v[(i + 1) % v.size()], x) < -kBoundaryTol) return false;
          }
          return true;
        }
      },
      shape_);
}

Box ConvexDomain::bounding_box() const {
  return std::visit(
      [](const auto& s) -> Box {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return s;
        } else if constexpr (std::is_same_v<T, Ball>) {
          Box b{s.center, s.center};
          for (std::size_t i = 0; i < s.center.size(); ++i) {
            b.lo[i] -= s.radius;
            b.hi[i] += s.radius;
          }
          return b;
        } else {
          Box b{{s.vertices[0][0], s.vertices[0][1]}, {s.vertices[0][0], s.vertices[0][1]}};
          for (const auto& p : s.vertices) {
            for (int i = 0; i < 2; ++i) {
              b.lo[i] = std::min(b.lo[i], p[i]);
              b.hi[i] = std::max(b.hi[i], p[i]);
            }
          }
          return b;
        }
      },
      shape_);
}

Domain::Domain(ConvexDomain piece) : pieces_{std::move(piece)} {}

Domain Domain::union_of(std::vector<ConvexDomain> pieces) {
  if (pieces.empty()) throw Error("domain union needs at least one piece");
  for (const auto& p : pieces) require_dim(pieces.front().dim(), p.dim());
  return Domain(std::move(pieces));
}

bool Domain::contains(std::span<const double> x) const {
  for (const auto& p : pieces_) {
    if (p.contains(x)) return true;
  }
  return false;
}

Box Domain::bounding_box() const {
  Box b = pieces_.front().bounding_box();
  for (const auto& p : pieces_) {
    const Box q = p.bounding_box();
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
      b.lo[i] = std::min(b.lo[i], q.lo[i]);
      b.hi[i] = std::max(b.hi[i], q.hi[i]);
    }
  }
  return b;
}

double grid_coord(double lo, double hi, int i, int n) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * i / (n - 1);
}

std::vector<Point> sample_grid(const Domain& domain, std::span<const int> resolution) {
  const std::size_t n = domain.dim();
  require_dim(n, resolution.size());
  for (int r : resolution) {
    if (r < 2) throw Error("grid resolution must be at least 2 per axis");
  }
  const Box bb = domain.bounding_box();
  std::vector<Point> out;
  std::vector<int> idx(n, 0);
  Point p(n);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) p[k] = grid_coord(bb.lo[k], bb.hi[k], idx[k], resolution[k]);
    if (domain.contains(p)) out.push_back(p);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < resolution[k]) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

std::vector<Point> sample_grid(const Domain& domain, int resolution) {
  const std::vector<int> r(domain.dim(), resolution);
  return sample_grid(domain, r);
}

}  // namespace tangentrep
