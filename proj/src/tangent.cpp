#include "tangentrep/tangent.hpp"

#include "tangentrep/errors.hpp"

namespace tangentrep {

TangentPlane tangent_plane(const ScalarField& f, std::span<const double> t) {
  ValueGradient vg = f.eval_with_gradient(t);
  return TangentPlane{Point(t.begin(), t.end()), std::move(vg.gradient), vg.value};
}

double plane_eval(const TangentPlane& plane, std::span<const double> x) {
  require_dim(plane.site.size(), x.size());
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += plane.grad[k] * (x[k] - plane.site[k]);
  return s + plane.value;
}

std::vector<TangentPlane> tangent_planes(const ScalarField& f, std::span<const Point> sites) {
  std::vector<TangentPlane> out;
  out.reserve(sites.size());
  for (const Point& t : sites) out.push_back(tangent_plane(f, t));
  return out;
}

simd::AffineBatch to_batch(std::span<const TangentPlane> planes) {
  if (planes.empty()) throw Error("cannot batch an empty plane list");
  simd::AffineBatch batch(planes.front().site.size());
  batch.reserve(planes.size());
  for (const auto& p : planes) batch.push(p.site, p.grad, p.value);
  return batch;
}

}  // namespace tangentrep
