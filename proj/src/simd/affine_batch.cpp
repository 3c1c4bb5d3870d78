#include "tangentrep/simd/affine_batch.hpp"

#include <string>

#include "tangentrep/errors.hpp"

namespace tangentrep::simd {

AffineBatch::AffineBatch(std::size_t dim) : dim_(dim) {
  if (dim < 1 || dim > 3) throw Error("affine batch dimension must be 1..3, got " + std::to_string(dim));
}

void AffineBatch::reserve(std::size_t n) {
  for (std::size_t k = 0; k < dim_; ++k) {
    origin_[k].reserve(n);
    slope_[k].reserve(n);
  }
  offset_.reserve(n);
}

void AffineBatch::push(std::span<const double> origin, std::span<const double> slope, double offset) {
  require_dim(dim_, origin.size());
  require_dim(dim_, slope.size());
  for (std::size_t k = 0; k < dim_; ++k) {
    origin_[k].push_back(origin[k]);
    slope_[k].push_back(slope[k]);
  }
  offset_.push_back(offset);
}

AffineView AffineBatch::view() const {
  AffineView v;
  v.dim = dim_;
  v.count = offset_.size();
  for (std::size_t k = 0; k < dim_; ++k) {
    v.origin[k] = origin_[k].data();
    v.slope[k] = slope_[k].data();
  }
  v.offset = offset_.data();
  return v;
}

void AffineBatch::eval(std::span<const double> x, std::span<double> out, const Kernels& k) const {
  require_dim(dim_, x.size());
  require_dim(size(), out.size());
  k.affine_eval(view(), x.data(), out.data());
}

}  // namespace tangentrep::simd
