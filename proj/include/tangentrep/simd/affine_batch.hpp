#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tangentrep/simd/kernels.hpp"

namespace tangentrep::simd {

/// Owning structure-of-arrays storage for a batch of affine functions.
class AffineBatch {
 public:
  explicit AffineBatch(std::size_t dim);

  void reserve(std::size_t n);
  void push(std::span<const double> origin, std::span<const double> slope, double offset);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return offset_.size(); }

  AffineView view() const;

  /// out.size() must equal size().
  void eval(std::span<const double> x, std::span<double> out, const Kernels& k = active()) const;

 private:
  std::size_t dim_;
  std::array<std::vector<double>, 3> origin_;
  std::array<std::vector<double>, 3> slope_;
  std::vector<double> offset_;
};

}  // namespace tangentrep::simd
