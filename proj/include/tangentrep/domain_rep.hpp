#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tangentrep/field.hpp"
#include "tangentrep/geometry.hpp"
#include "tangentrep/simd/affine_batch.hpp"

namespace tangentrep {

/// Compact planar region {x : phi(x) <= 0} inside a bounding box, with
/// grad phi nonzero on the boundary. phi < 0 inside, so grad phi points outward.
struct ImplicitDomain2D {
  ScalarField phi;
  Box bbox;
};

ImplicitDomain2D unit_disk_domain();
ImplicitDomain2D peanut_domain();

inline constexpr double kOnBoundaryTol = 1e-8;
inline constexpr double kMinGradientNorm = 1e-8;
inline constexpr double kExitTol = 1e-10;
inline constexpr double kBaseInset = 1e-6;

/// Tangent half-plane at a boundary point. Throws NotOnBoundary when
/// |phi(x0)| > 1e-8 and DegenerateGradient when |grad phi(x0)| < 1e-8.
HalfSpace boundary_halfspace(const ImplicitDomain2D& dom, std::span<const double> x0);

/// Far end a_R of the segment of the ray {a + s d} that stays in the domain:
/// the first crossing where phi turns positive. Marching step is the bbox
/// diagonal / 1024; the crossing is bisected to |phi| <= 1e-10.
/// Throws RayEscapesBoundingBox if phi never turns positive inside the box.
Point ray_exit(const ImplicitDomain2D& dom, std::span<const double> a, const Direction& d);

/// Union over clauses of the intersection of each clause's half-planes.
struct BooleanDomainRep {
  std::vector<HalfSpace> halfspaces;
  std::vector<std::vector<std::uint32_t>> clauses;
  std::vector<Point> bases;  // base point a of each clause
};

/// Base points are the bbox grid points with phi <= -1e-6; each casts
/// ray_count equiangular rays. Half-planes are shared across clauses after
/// rounding (anchor, normal) to 1e-9.
BooleanDomainRep build_domain_rep(const ImplicitDomain2D& dom, int base_resolution, int ray_count);

/// Precomputed batch form of a BooleanDomainRep for repeated membership queries.
class DomainMembership {
 public:
  explicit DomainMembership(const BooleanDomainRep& rep);
  bool member(std::span<const double> y, const simd::Kernels& k = simd::active()) const;
  /// Clause membership of y, for containment diagnostics.
  bool in_clause(std::size_t clause, std::span<const double> y) const;

 private:
  BooleanDomainRep rep_;
  simd::AffineBatch batch_;
};

bool member(const BooleanDomainRep& rep, std::span<const double> y);

/// Boundary polyline of a domain that is star-shaped about `center`, from
/// ray_exit at `count` equiangular directions.
std::vector<std::array<double, 2>> boundary_polyline(const ImplicitDomain2D& dom, std::span<const double> center,
                                                     int count);

/// Euclidean distance from y to a closed polyline.
double distance_to_polyline(std::span<const std::array<double, 2>> poly, std::span<const double> y);

struct AgreementStats {
  std::size_t tested = 0;     // grid points outside the boundary band
  std::size_t agree = 0;
  std::size_t band_points = 0;
  double rate() const { return tested == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(tested); }
};

/// Compares member() against the sign of phi on a grid x grid lattice over the
/// bbox, skipping points closer than `band` to the boundary polyline.
AgreementStats agreement(const ImplicitDomain2D& dom, const BooleanDomainRep& rep, int grid,
                         std::span<const std::array<double, 2>> boundary, double band);

}  // namespace tangentrep
