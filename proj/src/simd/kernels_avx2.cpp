// AVX2 kernels. Compiled with -mavx2 -mfma but contraction stays off, so each
// lane performs exactly the scalar operation sequence.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "tangentrep/simd/kernels.hpp"

namespace tangentrep::simd {

namespace {

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

template <std::size_t Dim>
void affine_eval_fixed(const AffineView& b, const double* x, double* out) {
  __m256d xs[Dim];
  for (std::size_t k = 0; k < Dim; ++k) xs[k] = _mm256_set1_pd(x[k]);
  std::size_t i = 0;
  for (; i + 4 <= b.count; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < Dim; ++k) {
      const __m256d d = _mm256_sub_pd(xs[k], _mm256_loadu_pd(b.origin[k] + i));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(b.slope[k] + i), d));
    }
    _mm256_storeu_pd(out + i, _mm256_add_pd(acc, _mm256_loadu_pd(b.offset + i)));
  }
  for (; i < b.count; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < Dim; ++k) s += b.slope[k][i] * (x[k] - b.origin[k][i]);
    out[i] = s + b.offset[i];
  }
}

void affine_eval(const AffineView& b, const double* x, double* out) {
  switch (b.dim) {
    case 1: affine_eval_fixed<1>(b, x, out); return;
    case 2: affine_eval_fixed<2>(b, x, out); return;
    default: affine_eval_fixed<3>(b, x, out); return;
  }
}

double reduce_min(const double* v, std::size_t n) {
  __m256d m0 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d m1 = m0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    m0 = _mm256_min_pd(m0, _mm256_loadu_pd(v + i));
    m1 = _mm256_min_pd(m1, _mm256_loadu_pd(v + i + 4));
  }
  double m = hmin(_mm256_min_pd(m0, m1));
  for (; i < n; ++i) m = std::min(m, v[i]);
  return m;
}

double reduce_max(const double* v, std::size_t n) {
  __m256d m0 = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d m1 = m0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    m0 = _mm256_max_pd(m0, _mm256_loadu_pd(v + i));
    m1 = _mm256_max_pd(m1, _mm256_loadu_pd(v + i + 4));
  }
  double m = hmax(_mm256_max_pd(m0, m1));
  for (; i < n; ++i) m = std::max(m, v[i]);
  return m;
}

inline __m256d gather4(const double* values, const std::uint32_t* idx) {
  const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
  return _mm256_i32gather_pd(values, vi, 8);
}

double gather_min_until(const double* values, const std::uint32_t* idx, std::size_t n, double floor) {
  __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  double m = std::numeric_limits<double>::infinity();
  std::size_t j = 0;
  for (; j + kGatherBlock <= n; j += kGatherBlock) {
    for (std::size_t i = j; i < j + kGatherBlock; i += 4) acc = _mm256_min_pd(acc, gather4(values, idx + i));
    m = hmin(acc);
    if (m <= floor) return m;
  }
  for (; j + 4 <= n; j += 4) acc = _mm256_min_pd(acc, gather4(values, idx + j));
  m = hmin(acc);
  for (; j < n; ++j) m = std::min(m, values[idx[j]]);
  return m;
}

double gather_max_until(const double* values, const std::uint32_t* idx, std::size_t n, double ceiling) {
  __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  double m = -std::numeric_limits<double>::infinity();
  std::size_t j = 0;
  for (; j + kGatherBlock <= n; j += kGatherBlock) {
    for (std::size_t i = j; i < j + kGatherBlock; i += 4) acc = _mm256_max_pd(acc, gather4(values, idx + i));
    m = hmax(acc);
    if (m >= ceiling) return m;
  }
  for (; j + 4 <= n; j += 4) acc = _mm256_max_pd(acc, gather4(values, idx + j));
  m = hmax(acc);
  for (; j < n; ++j) m = std::max(m, values[idx[j]]);
  return m;
}

}  // namespace

namespace detail {
const Kernels kAvx2Kernels{Backend::avx2, affine_eval, reduce_min, reduce_max, gather_min_until,
                           gather_max_until};
}  // namespace detail

}  // namespace tangentrep::simd
