#include "tangentrep/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "tangentrep/errors.hpp"

namespace tangentrep::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_value(std::ostream& os, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << Json(it.key()).dump() << ':';
        write_value(os, it.value());
      }
      os << '}';
      return;
    }
    case Json::value_t::array: {
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << ',';
        first = false;
        write_value(os, e);
      }
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) os << format_double(v);
      else os << "null";
      return;
    }
    default: os << j.dump(); return;
  }
}

std::vector<double> parse_numbers(std::string_view s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    std::string_view tok = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw ConfigError("malformed number '" + std::string(tok) + "' in '" + std::string(s) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

void write_json(std::ostream& os, const Json& j) { write_value(os, j); }

std::string to_json_string(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

std::string csv_row(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string csv_header(std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out;
}

Json to_json(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json to_json(const TangentPlane& plane) {
  return Json{{"t", to_json(plane.site)}, {"grad", to_json(plane.grad)}, {"f_t", plane.value}};
}

Json to_json(const MaxMinRepresentation& rep) {
  Json sites = Json::array();
  Json planes = Json::array();
  Json families = Json::array();
  for (const auto& plane : rep.planes()) planes.push_back(to_json(plane));
  for (std::size_t u = 0; u < rep.size(); ++u) {
    sites.push_back(to_json(rep.planes()[u].site));
    Json members = Json::array();
    for (std::uint32_t m : rep.members(u)) members.push_back(m);
    families.push_back(Json{{"u", u}, {"members", std::move(members)}});
  }
  return Json{{"sites", std::move(sites)}, {"planes", std::move(planes)}, {"families", std::move(families)},
              {"tau", rep.tau()}};
}

Json to_json(const BooleanDomainRep& rep) {
  Json hs = Json::array();
  for (const auto& q : rep.halfspaces) {
    hs.push_back(Json{{"anchor", to_json(q.anchor)}, {"normal", to_json(q.normal.coords())}});
  }
  Json clauses = Json::array();
  for (const auto& c : rep.clauses) {
    Json a = Json::array();
    for (std::uint32_t i : c) a.push_back(i);
    clauses.push_back(std::move(a));
  }
  Json bases = Json::array();
  for (const auto& b : rep.bases) bases.push_back(to_json(b));
  return Json{{"halfspaces", std::move(hs)}, {"clauses", std::move(clauses)}, {"bases", std::move(bases)}};
}

Json to_json(const ObstructionReport& r) {
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  return Json{{"notes", std::move(notes)},
              {"a", to_json(r.a)},
              {"b", to_json(r.b)},
              {"b_in_delta1", r.b_in_delta1},
              {"f_a", r.f_a},
              {"f_b", r.f_b},
              {"site_count", r.site_count},
              {"max_site_discrepancy", r.max_site_discrepancy},
              {"positive_sites", r.positive_sites},
              {"positive_sites_in_delta2", r.positive_sites_in_delta2},
              {"zero_planes_off_delta2", r.zero_planes_off_delta2},
              {"omega_nonconvex", r.omega_nonconvex},
              {"no_separating_representation", r.no_separating_representation}};
}

Json to_json(const DemoReport& r) {
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  return Json{{"notes", std::move(notes)},
              {"resolution", r.resolution},
              {"a", to_json(r.a)},
              {"b", to_json(r.b)},
              {"f_a", r.f_a},
              {"f_b", r.f_b},
              {"rep_a", r.rep_a},
              {"rep_b", r.rep_b},
              {"rep_gap", r.rep_gap},
              {"worst_error", r.worst_error},
              {"convex_control_error", r.convex_control_error},
              {"affine_control_error", r.affine_control_error}};
}

Json to_json(const Lambda0Result& r) {
  const char* branch = r.branch == Lambda0Branch::left_endpoint    ? "left_endpoint"
                       : r.branch == Lambda0Branch::right_endpoint ? "right_endpoint"
                                                                   : "interior_root";
  Json j{{"lambda0", r.lambda0}, {"branch", branch}, {"m", r.m}, {"refinements", r.refinements}};
  if (r.negative_witness) j["negative_witness"] = *r.negative_witness;
  return j;
}

Json to_json(const Domain& d) {
  Json pieces = Json::array();
  for (const auto& p : d.pieces()) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Box>) {
            pieces.push_back(Json{{"kind", "box"}, {"lo", to_json(s.lo)}, {"hi", to_json(s.hi)}});
          } else if constexpr (std::is_same_v<T, Ball>) {
            pieces.push_back(Json{{"kind", "ball"}, {"center", to_json(s.center)}, {"radius", s.radius}});
          } else {
            Json v = Json::array();
            for (const auto& q : s.vertices) v.push_back(Json::array({q[0], q[1]}));
            pieces.push_back(Json{{"kind", "polygon"}, {"vertices", std::move(v)}});
          }
        },
        p.shape());
  }
  if (pieces.size() == 1) return pieces[0];
  return Json{{"kind", "union"}, {"pieces", std::move(pieces)}};
}

std::vector<double> vector_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected a numeric array");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw ConfigError("expected a numeric array");
    out.push_back(e.get<double>());
  }
  return out;
}

TangentPlane plane_from_json(const Json& j) {
  TangentPlane p{vector_from_json(j.at("t")), vector_from_json(j.at("grad")), j.at("f_t").get<double>()};
  require_dim(p.site.size(), p.grad.size());
  return p;
}

MaxMinRepresentation representation_from_json(const Json& j, Domain domain) {
  try {
    std::vector<TangentPlane> planes;
    for (const auto& p : j.at("planes")) planes.push_back(plane_from_json(p));
    std::vector<SiteSet> families;
    for (const auto& f : j.at("families")) {
      SiteSet s{f.at("u").get<std::size_t>(), {}};
      for (const auto& m : f.at("members")) s.members.push_back(m.get<std::uint32_t>());
      families.push_back(std::move(s));
    }
    return MaxMinRepresentation::from_parts(std::move(domain), std::move(planes), std::move(families),
                                            j.at("tau").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed representation JSON: ") + e.what());
  }
}

Domain domain_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "box") return ConvexDomain::box(vector_from_json(j.at("lo")), vector_from_json(j.at("hi")));
    if (kind == "ball") return ConvexDomain::ball(vector_from_json(j.at("center")), j.at("radius").get<double>());
    if (kind == "polygon") {
      std::vector<std::array<double, 2>> v;
      for (const auto& q : j.at("vertices")) {
        const auto c = vector_from_json(q);
        if (c.size() != 2) throw ConfigError("polygon vertices must be 2-D");
        v.push_back({c[0], c[1]});
      }
      return ConvexDomain::polygon(std::move(v));
    }
    if (kind == "union") {
      std::vector<ConvexDomain> pieces;
      for (const auto& p : j.at("pieces")) {
        const Domain d = domain_from_json(p);
        pieces.insert(pieces.end(), d.pieces().begin(), d.pieces().end());
      }
      return Domain::union_of(std::move(pieces));
    }
    throw ConfigError("unknown domain kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed domain JSON: ") + e.what());
  }
}

Domain parse_domain(std::string_view spec) {
  if (!spec.empty() && spec.front() == '{') {
    Json j;
    try {
      j = Json::parse(spec);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("domain JSON does not parse: ") + e.what());
    }
    return domain_from_json(j);
  }
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) throw ConfigError("domain spec must look like kind:numbers");
  const std::string_view kind = spec.substr(0, colon);
  const std::vector<double> v = parse_numbers(spec.substr(colon + 1));
  try {
    if (kind == "box") {
      if (v.empty() || v.size() % 2 != 0) throw ConfigError("box needs lo,hi pairs per axis");
      Point lo;
      Point hi;
      for (std::size_t i = 0; i < v.size(); i += 2) {
        lo.push_back(v[i]);
        hi.push_back(v[i + 1]);
      }
      return ConvexDomain::box(std::move(lo), std::move(hi));
    }
    if (kind == "ball") {
      if (v.size() < 2) throw ConfigError("ball needs center coordinates and a radius");
      return ConvexDomain::ball(Point(v.begin(), v.end() - 1), v.back());
    }
    if (kind == "polygon") {
      if (v.size() < 6 || v.size() % 2 != 0) throw ConfigError("polygon needs at least three x,y pairs");
      std::vector<std::array<double, 2>> verts;
      for (std::size_t i = 0; i < v.size(); i += 2) verts.push_back({v[i], v[i + 1]});
      return ConvexDomain::polygon(std::move(verts));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown domain kind '" + std::string(kind) + "'");
}

}  // namespace tangentrep::io
