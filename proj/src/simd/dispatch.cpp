#include <cstdlib>
#include <string>

#include "tangentrep/simd/kernels.hpp"

namespace tangentrep::simd {

namespace {

bool cpu_has_avx2() {
#if defined(TANGENTREP_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Kernels& pick() {
  const char* env = std::getenv("TANGENTREP_SIMD");
  if (env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return detail::kScalarKernels;
    if (want == "avx2") {
      if (const Kernels* k = kernels_for(Backend::avx2)) return *k;
    }
  }
  if (const Kernels* k = kernels_for(Backend::avx2)) return *k;
  return detail::kScalarKernels;
}

}  // namespace

const Kernels* kernels_for(Backend backend) {
  switch (backend) {
    case Backend::scalar: return &detail::kScalarKernels;
    case Backend::avx2:
#if defined(TANGENTREP_BUILD_AVX2)
      if (cpu_has_avx2()) return &detail::kAvx2Kernels;
#endif
      return nullptr;
  }
  return nullptr;
}

const Kernels& active() {
  static const Kernels& chosen = pick();
  return chosen;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
  if (kernels_for(Backend::avx2) != nullptr) out.push_back(Backend::avx2);
  return out;
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace tangentrep::simd
