#include "tangentrep/errors.hpp"

namespace tangentrep {

namespace {

const char* kind_label(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::syntax: return "syntax error";
    case ParseError::Kind::unknown_identifier: return "unknown identifier";
    case ParseError::Kind::variable_out_of_range: return "variable index out of range";
    case ParseError::Kind::non_smooth_primitive: return "non-smooth primitive";
  }
  return "parse error";
}

}  // namespace

DimensionError::DimensionError(std::size_t expected, std::size_t actual)
    : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
            std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

ParseError::ParseError(Kind kind, std::size_t position, const std::string& detail)
    : Error(std::string(kind_label(kind)) + " at position " + std::to_string(position) +
            (detail.empty() ? std::string() : ": " + detail)),
      kind_(kind),
      position_(position) {}

void require_dim(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionError(expected, actual);
}

}  // namespace tangentrep
