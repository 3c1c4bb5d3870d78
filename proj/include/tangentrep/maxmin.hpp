#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "tangentrep/field.hpp"
#include "tangentrep/geometry.hpp"
#include "tangentrep/simd/affine_batch.hpp"
#include "tangentrep/tangent.hpp"

namespace tangentrep {

/// Default relative tolerance for site-set membership.
inline constexpr double kDefaultTau = 1e-9;

/// S_u over a finite site list: indices i with g_{t_i}(u) >= f(u) - tau * (1 + |f(u)|).
struct SiteSet {
  std::size_t u_index;
  std::vector<std::uint32_t> members;  // sorted, always contains u_index
};

SiteSet site_set(const ScalarField& f, std::span<const Point> sites, std::size_t u_index, double tau = kDefaultTau);

/// f(x) ~ max_u min_{i in S_u} g_{t_i}(x) over one shared finite site list.
///
/// Exact (up to tau) at the sites; elsewhere the error is one-sided per family
/// and shrinks with the sampling density. Identical site sets are stored once,
/// so the strictly concave case costs O(n) rather than O(n^2).
///
/// On a convex domain a non-convex f can leave some family S_w above f at
/// another site u. build() then appends the tangent plane at the segment pivot
/// c between u and w (which lies in S_w and under f at u) to that family.
/// planes() lists the site planes first, followed by these pivot planes.
class MaxMinRepresentation {
 public:
  static MaxMinRepresentation build(const ScalarField& f, Domain domain, std::vector<Point> sites,
                                    double tau = kDefaultTau);

  /// Reassembles a representation from exported parts. Families are given per
  /// site; planes beyond families.size() are pivot planes.
  static MaxMinRepresentation from_parts(Domain domain, std::vector<TangentPlane> planes,
                                         std::vector<SiteSet> families, double tau);

  /// Throws DomainError outside the domain.
  double eval(std::span<const double> x) const;
  double eval(std::span<const double> x, const simd::Kernels& kernels) const;

  /// Number of sites (and families).
  std::size_t size() const { return site_count_; }
  std::size_t plane_count() const { return planes_.size(); }
  std::size_t pivot_count() const { return planes_.size() - site_count_; }
  std::size_t dim() const { return domain_.dim(); }
  const std::vector<TangentPlane>& planes() const { return planes_; }
  const Domain& domain() const { return domain_; }
  double tau() const { return tau_; }

  std::span<const std::uint32_t> members(std::size_t u) const;
  SiteSet family(std::size_t u) const;
  std::size_t unique_family_count() const { return members_.size(); }

 private:
  MaxMinRepresentation(Domain domain, std::vector<TangentPlane> planes, std::size_t site_count, double tau);
  void augment_with_pivots(const ScalarField& f);
  void rebuild_families(std::vector<std::vector<std::uint32_t>> per_site);
  void add_family(std::size_t u, std::vector<std::uint32_t> members);
  double eval_values(std::span<const double> x, std::span<const double> values, const simd::Kernels& k) const;

  Domain domain_;
  std::vector<TangentPlane> planes_;
  simd::AffineBatch batch_;
  std::size_t site_count_;
  double tau_;
  std::vector<std::vector<std::uint32_t>> members_;  // unique site sets
  std::vector<std::vector<std::uint32_t>> owners_;   // sites u mapping to each unique set
  std::vector<std::uint32_t> family_of_site_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> dedup_;  // only during construction
};

MaxMinRepresentation build_representation(const ScalarField& f, const Domain& domain, int resolution,
                                          double tau = kDefaultTau);

double rep_eval(const MaxMinRepresentation& rep, std::span<const double> x);

enum class Extremum { sup, inf };

/// max (sup) or min (inf) of a fixed plane family, evaluated with the batch kernels.
class PlaneEnvelope {
 public:
  explicit PlaneEnvelope(std::span<const TangentPlane> planes);
  double eval(std::span<const double> x, Extremum mode, const simd::Kernels& k = simd::active()) const;
  std::size_t size() const { return batch_.size(); }

 private:
  simd::AffineBatch batch_;
};

double extremal_eval(const ScalarField& f, std::span<const Point> sites, std::span<const double> x, Extremum mode);

}  // namespace tangentrep
