#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tangentrep/field.hpp"
#include "tangentrep/geometry.hpp"
#include "tangentrep/simd/affine_batch.hpp"

namespace tangentrep {

/// One point (p, H) = (grad f(t), <grad f(t), t> - f(t)) of the dual surface,
/// kept together with the site t it came from.
struct LegendreSample {
  Point t;
  std::vector<double> p;
  double H;
};

struct InjectivityDiagnostic {
  double min_p_distance;  // over distinct site pairs
  double min_t_distance;
  std::size_t duplicate_p;  // pairs whose p agree after rounding to 1e-12
  /// 1-D only: every second difference of f over the sorted sites is positive.
  std::optional<bool> second_differences_positive;
};

struct LegendreSet {
  std::vector<LegendreSample> samples;
  InjectivityDiagnostic injectivity;
};

LegendreSet legendre_points(const ScalarField& f, std::span<const Point> sites);

/// max over samples of <p, x> - H, the upper envelope of the sampled tangent
/// planes. For convex f it equals f at the sites and approaches f between
/// them; otherwise it can lie strictly above f.
double conjugate_eval(std::span<const LegendreSample> samples, std::span<const double> x);

/// Batched form of conjugate_eval for many evaluation points.
class ConjugateEnvelope {
 public:
  explicit ConjugateEnvelope(std::span<const LegendreSample> samples);
  double eval(std::span<const double> x, const simd::Kernels& k = simd::active()) const;

 private:
  simd::AffineBatch batch_;
};

}  // namespace tangentrep
