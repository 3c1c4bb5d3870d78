// Reference kernels. Every other backend is tested for equality against these.

#include <algorithm>
#include <limits>

#include "tangentrep/simd/kernels.hpp"

namespace tangentrep::simd {

namespace {

void affine_eval(const AffineView& b, const double* x, double* out) {
  for (std::size_t i = 0; i < b.count; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < b.dim; ++k) s += b.slope[k][i] * (x[k] - b.origin[k][i]);
    out[i] = s + b.offset[i];
  }
}

double reduce_min(const double* v, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, v[i]);
  return m;
}

double reduce_max(const double* v, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, v[i]);
  return m;
}

double gather_min_until(const double* values, const std::uint32_t* idx, std::size_t n, double floor) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; j += kGatherBlock) {
    const std::size_t end = std::min(n, j + kGatherBlock);
    for (std::size_t i = j; i < end; ++i) m = std::min(m, values[idx[i]]);
    if (m <= floor) return m;
  }
  return m;
}

double gather_max_until(const double* values, const std::uint32_t* idx, std::size_t n, double ceiling) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; j += kGatherBlock) {
    const std::size_t end = std::min(n, j + kGatherBlock);
    for (std::size_t i = j; i < end; ++i) m = std::max(m, values[idx[i]]);
    if (m >= ceiling) return m;
  }
  return m;
}

}  // namespace

namespace detail {
const Kernels kScalarKernels{Backend::scalar, affine_eval, reduce_min, reduce_max, gather_min_until,
                             gather_max_until};
}  // namespace detail

}  // namespace tangentrep::simd
