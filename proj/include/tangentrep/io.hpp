#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tangentrep/counterexample.hpp"
#include "tangentrep/domain_rep.hpp"
#include "tangentrep/geometry.hpp"
#include "tangentrep/legendre.hpp"
#include "tangentrep/maxmin.hpp"
#include "tangentrep/segment_lemmas.hpp"
#include "tangentrep/tangent.hpp"

namespace tangentrep::io {

using Json = nlohmann::ordered_json;

/// Doubles as %.17g, so every value round-trips bit-exactly.
std::string format_double(double v);

/// Compact JSON with doubles formatted by format_double. Non-finite numbers become null.
void write_json(std::ostream& os, const Json& j);
std::string to_json_string(const Json& j);

/// One CSV line; numbers via format_double.
std::string csv_row(std::span<const double> values);
std::string csv_header(std::span<const std::string> names);

Json to_json(std::span<const double> v);
Json to_json(const TangentPlane& plane);
Json to_json(const MaxMinRepresentation& rep);
Json to_json(const BooleanDomainRep& rep);
Json to_json(const ObstructionReport& r);
Json to_json(const DemoReport& r);
Json to_json(const Lambda0Result& r);
Json to_json(const Domain& d);

std::vector<double> vector_from_json(const Json& j);
TangentPlane plane_from_json(const Json& j);
/// Inverse of to_json(MaxMinRepresentation); the domain is not part of the export.
MaxMinRepresentation representation_from_json(const Json& j, Domain domain);

/// {"kind":"box","lo":[..],"hi":[..]}, {"kind":"ball","center":[..],"radius":r},
/// {"kind":"polygon","vertices":[[x,y],..]} or {"kind":"union","pieces":[..]}.
Domain domain_from_json(const Json& j);

/// "box:lo1,hi1[,lo2,hi2..]", "ball:c1,..,cn,r", "polygon:x1,y1,x2,y2,..", or inline JSON.
Domain parse_domain(std::string_view spec);

}  // namespace tangentrep::io
