#pragma once

#include <span>
#include <vector>

#include "tangentrep/field.hpp"
#include "tangentrep/geometry.hpp"
#include "tangentrep/simd/affine_batch.hpp"

namespace tangentrep {

/// The tangent affine function g_t(x) = <grad f(t), x - t> + f(t).
///
/// Stored as (site, gradient, value) rather than slope/intercept so every
/// exported affine piece keeps the site it was generated at.
struct TangentPlane {
  Point site;
  std::vector<double> grad;
  double value;
};

TangentPlane tangent_plane(const ScalarField& f, std::span<const double> t);

/// <grad, x - site> + value, summed in coordinate order.
double plane_eval(const TangentPlane& plane, std::span<const double> x);

std::vector<TangentPlane> tangent_planes(const ScalarField& f, std::span<const Point> sites);

/// SoA copy of the planes for the batch kernels. Evaluates bit-identically to plane_eval.
simd::AffineBatch to_batch(std::span<const TangentPlane> planes);

}  // namespace tangentrep
