#include "tangentrep/maxmin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "tangentrep/errors.hpp"
#include "tangentrep/parallel.hpp"
#include "tangentrep/segment_lemmas.hpp"

namespace tangentrep {

namespace {

std::vector<double>& scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  buf.resize(n);
  return buf;
}

double membership_threshold(double fu, double tau) { return fu - tau * (1.0 + std::abs(fu)); }

std::vector<std::uint32_t> members_at(std::span<const double> values, std::size_t u, double fu, double tau) {
  const double threshold = membership_threshold(fu, tau);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= threshold || i == u) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::uint64_t hash_members(std::span<const std::uint32_t> m) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t v : m) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h ^ m.size();
}

}  // namespace

SiteSet site_set(const ScalarField& f, std::span<const Point> sites, std::size_t u_index, double tau) {
  if (sites.empty()) throw Error("site_set needs at least one site");
  if (u_index >= sites.size()) throw Error("site_set: u_index out of range");
  const std::vector<TangentPlane> planes = tangent_planes(f, sites);
  const simd::AffineBatch batch = to_batch(planes);
  std::vector<double> values(batch.size());
  batch.eval(sites[u_index], values);
  return SiteSet{u_index, members_at(values, u_index, planes[u_index].value, tau)};
}

MaxMinRepresentation::MaxMinRepresentation(Domain domain, std::vector<TangentPlane> planes, std::size_t site_count,
                                           double tau)
    : domain_(std::move(domain)),
      planes_(std::move(planes)),
      batch_(to_batch(planes_)),
      site_count_(site_count),
      tau_(tau) {
  if (!(tau >= 0.0)) throw Error("tau must be non-negative");
  if (planes_.size() > std::numeric_limits<std::uint32_t>::max()) throw Error("too many planes");
  if (site_count_ == 0 || site_count_ > planes_.size()) throw Error("site count must be in [1, plane count]");
  family_of_site_.assign(site_count_, 0);
}

void MaxMinRepresentation::rebuild_families(std::vector<std::vector<std::uint32_t>> per_site) {
  members_.clear();
  owners_.clear();
  dedup_.clear();
  for (std::size_t u = 0; u < per_site.size(); ++u) add_family(u, std::move(per_site[u]));
  dedup_.clear();
}

void MaxMinRepresentation::augment_with_pivots(const ScalarField& f) {
  struct Fix {
    std::uint32_t owner;
    Point c;
  };
  const simd::Kernels& k = simd::active();
  std::vector<std::vector<Fix>> fixes(site_count_);
  parallel_for(site_count_, [&](std::size_t begin, std::size_t end) {
    std::vector<double> values(planes_.size());
    for (std::size_t u = begin; u < end; ++u) {
      const Point& xu = planes_[u].site;
      const double fu = planes_[u].value;
      const double limit = fu + 0.25 * tau_ * (1.0 + std::abs(fu));
      k.affine_eval(batch_.view(), xu.data(), values.data());
      for (std::uint32_t id = 0; id < members_.size(); ++id) {
        const auto& own = owners_[id];
        if (k.gather_min_until(values.data(), own.data(), own.size(), limit) <= limit) continue;
        const auto& m = members_[id];
        if (k.gather_min_until(values.data(), m.data(), m.size(), limit) <= limit) continue;
        for (std::uint32_t w : owners_[id]) {
          try {
            fixes[u].push_back({w, pivot_site(f, xu, planes_[w].site).c});
          } catch (const NoRootFound&) {
            // Left unrepaired; interpolation checks will report the site.
          }
        }
      }
    }
  });

  std::vector<std::vector<std::uint32_t>> per_site(site_count_);
  for (std::size_t w = 0; w < site_count_; ++w) {
    const auto& m = members_[family_of_site_[w]];
    per_site[w].assign(m.begin(), m.end());
  }
  bool changed = false;
  for (const auto& list : fixes) {
    for (const Fix& fix : list) {
      if (!domain_.contains(fix.c)) continue;
      TangentPlane plane = tangent_plane(f, fix.c);
      const double fw = planes_[fix.owner].value;
      if (plane_eval(plane, planes_[fix.owner].site) < membership_threshold(fw, tau_)) continue;
      per_site[fix.owner].push_back(static_cast<std::uint32_t>(planes_.size()));
      planes_.push_back(std::move(plane));
      changed = true;
    }
  }
  if (!changed) return;
  if (planes_.size() > std::numeric_limits<std::uint32_t>::max()) throw Error("too many planes");
  batch_ = to_batch(planes_);
  rebuild_families(std::move(per_site));
}

void MaxMinRepresentation::add_family(std::size_t u, std::vector<std::uint32_t> members) {
  // Buckets keyed by content hash; collisions resolved by full comparison.
  const std::uint64_t h = hash_members(members);
  auto& bucket = dedup_[h];
  for (std::uint32_t id : bucket) {
    if (members_[id] == members) {
      owners_[id].push_back(static_cast<std::uint32_t>(u));
      family_of_site_[u] = id;
      return;
    }
  }
  const auto id = static_cast<std::uint32_t>(members_.size());
  members_.push_back(std::move(members));
  owners_.push_back({static_cast<std::uint32_t>(u)});
  bucket.push_back(id);
  family_of_site_[u] = id;
}

MaxMinRepresentation MaxMinRepresentation::build(const ScalarField& f, Domain domain, std::vector<Point> sites,
                                                 double tau) {
  if (sites.empty()) throw Error("representation needs at least one site");
  require_dim(domain.dim(), static_cast<std::size_t>(f.dim()));
  for (const Point& s : sites) {
    if (!domain.contains(s)) throw DomainError("site outside the representation domain");
  }
  const std::size_t n = sites.size();
  MaxMinRepresentation rep(std::move(domain), tangent_planes(f, sites), n, tau);
  std::vector<std::vector<std::uint32_t>> per_site(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> values(n);
    for (std::size_t u = begin; u < end; ++u) {
      rep.batch_.eval(rep.planes_[u].site, values);
      per_site[u] = members_at(values, u, rep.planes_[u].value, tau);
    }
  });
  rep.rebuild_families(std::move(per_site));
  if (rep.domain_.is_convex()) rep.augment_with_pivots(f);
  return rep;
}

MaxMinRepresentation MaxMinRepresentation::from_parts(Domain domain, std::vector<TangentPlane> planes,
                                                      std::vector<SiteSet> families, double tau) {
  if (planes.empty()) throw Error("representation needs at least one plane");
  if (families.empty() || families.size() > planes.size()) throw Error("expected one family per site");
  for (const auto& p : planes) {
    require_dim(domain.dim(), p.site.size());
    require_dim(domain.dim(), p.grad.size());
  }
  const std::size_t n = families.size();
  MaxMinRepresentation rep(std::move(domain), std::move(planes), n, tau);
  std::vector<bool> seen(n, false);
  for (auto& fam : families) {
    if (fam.u_index >= rep.size() || seen[fam.u_index]) throw Error("family site indices must be a permutation");
    seen[fam.u_index] = true;
    std::sort(fam.members.begin(), fam.members.end());
    fam.members.erase(std::unique(fam.members.begin(), fam.members.end()), fam.members.end());
    if (fam.members.empty() || fam.members.back() >= rep.plane_count()) throw Error("family member index out of range");
    if (!std::binary_search(fam.members.begin(), fam.members.end(), static_cast<std::uint32_t>(fam.u_index))) {
      throw Error("family of site " + std::to_string(fam.u_index) + " must contain the site itself");
    }
    rep.add_family(fam.u_index, std::move(fam.members));
  }
  rep.dedup_.clear();
  return rep;
}

std::span<const std::uint32_t> MaxMinRepresentation::members(std::size_t u) const {
  return members_.at(family_of_site_.at(u));
}

SiteSet MaxMinRepresentation::family(std::size_t u) const {
  const auto m = members(u);
  return SiteSet{u, std::vector<std::uint32_t>(m.begin(), m.end())};
}

double MaxMinRepresentation::eval(std::span<const double> x) const { return eval(x, simd::active()); }

double MaxMinRepresentation::eval(std::span<const double> x, const simd::Kernels& k) const {
  require_dim(dim(), x.size());
  if (!domain_.contains(x)) throw DomainError("evaluation point outside the representation domain");
  std::vector<double>& values = scratch(plane_count());
  k.affine_eval(batch_.view(), x.data(), values.data());
  return eval_values(x, values, k);
}

double MaxMinRepresentation::eval_values(std::span<const double> x, std::span<const double> values,
                                         const simd::Kernels& k) const {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  // Seed with the family of the nearest site, which is usually the maximizer.
  std::size_t nearest = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < site_count_; ++i) {
    double d2 = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double d = x[c] - planes_[i].site[c];
      d2 += d * d;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      nearest = i;
    }
  }
  const std::uint32_t seed = family_of_site_[nearest];
  const auto& seed_members = members_[seed];
  double best = k.gather_min_until(values.data(), seed_members.data(), seed_members.size(), kNegInf);

  for (std::uint32_t id = 0; id < members_.size(); ++id) {
    if (id == seed) continue;
    // Each owner u belongs to its own S_u, so g_u(x) bounds the family minimum.
    const auto& own = owners_[id];
    const double bound = k.gather_min_until(values.data(), own.data(), own.size(), kNegInf);
    if (bound <= best) continue;
    const auto& m = members_[id];
    const double v = k.gather_min_until(values.data(), m.data(), m.size(), best);
    if (v > best) best = v;
  }
  return best;
}

MaxMinRepresentation build_representation(const ScalarField& f, const Domain& domain, int resolution, double tau) {
  return MaxMinRepresentation::build(f, domain, sample_grid(domain, resolution), tau);
}

double rep_eval(const MaxMinRepresentation& rep, std::span<const double> x) { return rep.eval(x); }

PlaneEnvelope::PlaneEnvelope(std::span<const TangentPlane> planes) : batch_(to_batch(planes)) {}

double PlaneEnvelope::eval(std::span<const double> x, Extremum mode, const simd::Kernels& k) const {
  std::vector<double>& values = scratch(batch_.size());
  batch_.eval(x, values, k);
  return mode == Extremum::sup ? k.reduce_max(values.data(), values.size())
                               : k.reduce_min(values.data(), values.size());
}

double extremal_eval(const ScalarField& f, std::span<const Point> sites, std::span<const double> x, Extremum mode) {
  if (sites.empty()) throw Error("extremal_eval needs at least one site");
  const std::vector<TangentPlane> planes = tangent_planes(f, sites);
  return PlaneEnvelope(planes).eval(x, mode);
}

}  // namespace tangentrep
