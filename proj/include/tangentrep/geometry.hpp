#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace tangentrep {

/// Absolute tolerance on every closed-set membership test.
inline constexpr double kBoundaryTol = 1e-12;

using Point = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// (1 - lambda) * a + lambda * b, componentwise.
Point lerp(std::span<const double> a, std::span<const double> b, double lambda);

/// Unit vector. Construction fails for inputs with norm below 1e-12.
class Direction {
 public:
  static Direction normalized(std::span<const double> v);

  std::span<const double> coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  explicit Direction(Point coords) : coords_(std::move(coords)) {}
  Point coords_;
};

/// Closed half-space { y : <normal, y> <= offset }, with offset = <normal, anchor>.
struct HalfSpace {
  Point anchor;
  Direction normal;
  double offset;

  static HalfSpace through(Point anchor, Direction outward_normal);

  /// <normal, y> - offset; nonpositive inside.
  double slack(std::span<const double> y) const;
  bool contains(std::span<const double> y) const;
};

struct Box {
  Point lo;
  Point hi;
};

struct Ball {
  Point center;
  double radius;
};

/// Counter-clockwise convex polygon in the plane.
struct Polygon {
  std::vector<std::array<double, 2>> vertices;
};

class ConvexDomain {
 public:
  static ConvexDomain box(Point lo, Point hi);
  static ConvexDomain ball(Point center, double radius);
  static ConvexDomain polygon(std::vector<std::array<double, 2>> ccw_vertices);

  std::size_t dim() const;
  bool contains(std::span<const double> x) const;
  Box bounding_box() const;

  const std::variant<Box, Ball, Polygon>& shape() const { return shape_; }

 private:
  explicit ConvexDomain(std::variant<Box, Ball, Polygon> shape) : shape_(std::move(shape)) {}
  std::variant<Box, Ball, Polygon> shape_;
};

/// Finite union of convex pieces. A single piece is the convex case; the
/// three-triangle region of the counterexample is a three-piece union.
class Domain {
 public:
  Domain(ConvexDomain piece);  // NOLINT(google-explicit-constructor)
  static Domain union_of(std::vector<ConvexDomain> pieces);

  std::size_t dim() const { return pieces_.front().dim(); }
  bool is_convex() const { return pieces_.size() == 1; }
  bool contains(std::span<const double> x) const;
  Box bounding_box() const;
  const std::vector<ConvexDomain>& pieces() const { return pieces_; }

 private:
  explicit Domain(std::vector<ConvexDomain> pieces) : pieces_(std::move(pieces)) {}
  std::vector<ConvexDomain> pieces_;
};

/// Uniform grid over the bounding box, filtered by membership, in
/// lexicographic index order (first axis slowest). Every resolution >= 2.
std::vector<Point> sample_grid(const Domain& domain, std::span<const int> resolution);
std::vector<Point> sample_grid(const Domain& domain, int resolution);

/// Grid coordinate i of n over [lo, hi]; the last node is hi exactly.
double grid_coord(double lo, double hi, int i, int n);

}  // namespace tangentrep
