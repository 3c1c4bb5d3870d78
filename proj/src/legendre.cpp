#include "tangentrep/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tangentrep/errors.hpp"

namespace tangentrep {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

bool same_after_rounding(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::llround(a[i] * 1e12) != std::llround(b[i] * 1e12)) return false;
  }
  return true;
}

}  // namespace

LegendreSet legendre_points(const ScalarField& f, std::span<const Point> sites) {
  LegendreSet out;
  out.samples.reserve(sites.size());
  std::vector<double> values;
  values.reserve(sites.size());
  for (const Point& t : sites) {
    ValueGradient vg = f.eval_with_gradient(t);
    const double H = dot(vg.gradient, t) - vg.value;
    values.push_back(vg.value);
    out.samples.push_back(LegendreSample{t, std::move(vg.gradient), H});
  }

  InjectivityDiagnostic diag{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0,
                             std::nullopt};
  const auto& s = out.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      diag.min_p_distance = std::min(diag.min_p_distance, distance(s[i].p, s[j].p));
      diag.min_t_distance = std::min(diag.min_t_distance, distance(s[i].t, s[j].t));
      if (same_after_rounding(s[i].p, s[j].p)) ++diag.duplicate_p;
    }
  }

  if (f.dim() == 1 && s.size() >= 3) {
    std::vector<std::size_t> order(s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a].t[0] < s[b].t[0]; });
    bool positive = true;
    for (std::size_t k = 1; k + 1 < order.size(); ++k) {
      const double t0 = s[order[k - 1]].t[0];
      const double t1 = s[order[k]].t[0];
      const double t2 = s[order[k + 1]].t[0];
      // Divided second difference, valid for uneven spacing.
      const double d1 = (values[order[k]] - values[order[k - 1]]) / (t1 - t0);
      const double d2 = (values[order[k + 1]] - values[order[k]]) / (t2 - t1);
      if (!(d2 - d1 > 0.0)) positive = false;
    }
    diag.second_differences_positive = positive;
  }
  out.injectivity = diag;
  return out;
}

ConjugateEnvelope::ConjugateEnvelope(std::span<const LegendreSample> samples)
    : batch_(samples.empty() ? 1 : samples.front().p.size()) {
  if (samples.empty()) throw Error("conjugate evaluation needs at least one sample");
  batch_.reserve(samples.size());
  const std::vector<double> zero(batch_.dim(), 0.0);
  for (const auto& s : samples) batch_.push(zero, s.p, -s.H);
}

double ConjugateEnvelope::eval(std::span<const double> x, const simd::Kernels& k) const {
  thread_local std::vector<double> values;
  values.resize(batch_.size());
  batch_.eval(x, values, k);
  return k.reduce_max(values.data(), values.size());
}

double conjugate_eval(std::span<const LegendreSample> samples, std::span<const double> x) {
  return ConjugateEnvelope(samples).eval(x);
}

}  // namespace tangentrep
