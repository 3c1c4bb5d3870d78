#include <cmath>
#include <numbers>

#include "tangentrep/counterexample.hpp"
#include "tangentrep/errors.hpp"
#include "tangentrep/field.hpp"

namespace tangentrep {

namespace {

constexpr std::string_view kNames[] = {"quadratic_bowl", "negative_bowl", "saddle",
                                       "sine_1d",        "exp_1d",        "affine",
                                       "half_square_1d", "peanut_phi",    "triangle_counterexample_f"};

ScalarField make(std::string name, int dim, ScalarField::GradientFn vg) {
  auto value = [vg](std::span<const double> x) { return vg(x).value; };
  return ScalarField(std::move(name), dim, std::move(value), std::move(vg));
}

Domain square(double r) { return ConvexDomain::box({-r, -r}, {r, r}); }

// Cassini-type level set with a waist at x1 = 0; {phi <= 0} is a peanut.
constexpr double kPeanutFoci = 0.7;
constexpr double kPeanutLevel = 0.8;

}  // namespace

std::span<const std::string_view> catalog_names() { return kNames; }

CatalogEntry catalog_entry(std::string_view name) {
  if (name == "quadratic_bowl") {
    return {make("quadratic_bowl", 2,
                 [](std::span<const double> x) {
                   return ValueGradient{x[0] * x[0] + x[1] * x[1], {2.0 * x[0], 2.0 * x[1]}};
                 }),
            square(1.0), Curvature::strictly_convex};
  }
  if (name == "negative_bowl") {
    return {make("negative_bowl", 2,
                 [](std::span<const double> x) {
                   return ValueGradient{-(x[0] * x[0] + x[1] * x[1]), {-2.0 * x[0], -2.0 * x[1]}};
                 }),
            square(1.0), Curvature::strictly_concave};
  }
  if (name == "saddle") {
    return {make("saddle", 2,
                 [](std::span<const double> x) {
                   return ValueGradient{x[0] * x[0] - x[1] * x[1], {2.0 * x[0], -2.0 * x[1]}};
                 }),
            square(1.0), Curvature::indefinite};
  }
  if (name == "sine_1d") {
    return {make("sine_1d", 1,
                 [](std::span<const double> x) { return ValueGradient{std::sin(x[0]), {std::cos(x[0])}}; }),
            ConvexDomain::box({0.0}, {2.0 * std::numbers::pi}), Curvature::indefinite};
  }
  if (name == "exp_1d") {
    return {make("exp_1d", 1,
                 [](std::span<const double> x) {
                   const double e = std::exp(x[0]);
                   return ValueGradient{e, {e}};
                 }),
            ConvexDomain::box({0.0}, {1.0}), Curvature::strictly_convex};
  }
  if (name == "affine") {
    return {make("affine", 1,
                 [](std::span<const double> x) { return ValueGradient{1.5 * x[0] - 0.25, {1.5}}; }),
            ConvexDomain::box({0.0}, {1.0}), Curvature::affine};
  }
  if (name == "half_square_1d") {
    return {make("half_square_1d", 1,
                 [](std::span<const double> x) { return ValueGradient{0.5 * x[0] * x[0], {x[0]}}; }),
            ConvexDomain::box({-2.0}, {2.0}), Curvature::strictly_convex};
  }
  if (name == "peanut_phi") {
    return {make("peanut_phi", 2,
                 [](std::span<const double> x) {
                   const double l = x[0] - kPeanutFoci;
                   const double r = x[0] + kPeanutFoci;
                   const double y2 = x[1] * x[1];
                   const double a = l * l + y2;
                   const double b = r * r + y2;
                   return ValueGradient{a * b - kPeanutLevel,
                                        {2.0 * l * b + 2.0 * r * a, 2.0 * x[1] * b + 2.0 * x[1] * a}};
                 }),
            ConvexDomain::box({-1.5, -1.0}, {1.5, 1.0}), Curvature::indefinite};
  }
  if (name == "triangle_counterexample_f") {
    return {triangle_counterexample_field(), TriangleDomain::as_domain(), Curvature::indefinite};
  }
  throw Error("unknown catalog field '" + std::string(name) + "'");
}

ScalarField catalog(std::string_view name) { return catalog_entry(name).field; }

}  // namespace tangentrep
