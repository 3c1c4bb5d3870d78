#pragma once

// Data-parallel inner loops: evaluating batches of affine functions and
// min/max reductions over index families. Each backend computes every
// affine value with the same operation order (no FMA contraction), so the
// backends agree bit for bit.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace tangentrep::simd {

enum class Backend { scalar, avx2 };

/// Structure-of-arrays view of `count` affine functions in `dim` <= 3 variables:
///   a_i(x) = sum_k slope[k][i] * (x[k] - origin[k][i]) + offset[i]   (k ascending)
struct AffineView {
  std::size_t dim = 0;
  std::size_t count = 0;
  std::array<const double*, 3> origin{};
  std::array<const double*, 3> slope{};
  const double* offset = nullptr;
};

struct Kernels {
  Backend backend;
  void (*affine_eval)(const AffineView& batch, const double* x, double* out);
  /// +inf / -inf for empty input.
  double (*reduce_min)(const double* values, std::size_t n);
  double (*reduce_max)(const double* values, std::size_t n);
  /// min_j values[idx[j]]. Exact whenever the result exceeds `floor`; once the
  /// running minimum drops to <= floor the scan may stop and return any value <= floor.
  double (*gather_min_until)(const double* values, const std::uint32_t* idx, std::size_t n, double floor);
  /// Mirror of gather_min_until with early exit once the running max is >= ceiling.
  double (*gather_max_until)(const double* values, const std::uint32_t* idx, std::size_t n, double ceiling);
};

/// Block length between early-exit checks in the gather kernels.
inline constexpr std::size_t kGatherBlock = 32;

/// Backend picked at first use: TANGENTREP_SIMD=scalar|avx2 if set and usable,
/// otherwise the widest one the CPU supports.
const Kernels& active();

/// nullptr when the backend was not compiled in or the CPU lacks it.
const Kernels* kernels_for(Backend backend);

std::vector<Backend> available_backends();
std::string_view backend_name(Backend backend);

namespace detail {
extern const Kernels kScalarKernels;
#if defined(TANGENTREP_BUILD_AVX2)
extern const Kernels kAvx2Kernels;
#endif
}  // namespace detail

}  // namespace tangentrep::simd
