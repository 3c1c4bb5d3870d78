#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tangentrep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  DimensionError(std::size_t expected, std::size_t actual);
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

/// Evaluation outside the region where a field (or a representation) is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_identifier, variable_out_of_range, non_smooth_primitive };

  ParseError(Kind kind, std::size_t position, const std::string& detail);
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

class NoRootFound : public Error {
 public:
  using Error::Error;
};

class NotOnBoundary : public Error {
 public:
  using Error::Error;
};

class DegenerateGradient : public Error {
 public:
  using Error::Error;
};

class RayEscapesBoundingBox : public Error {
 public:
  using Error::Error;
};

class PointNotInInterior : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Throws DimensionError unless actual == expected.
void require_dim(std::size_t expected, std::size_t actual);

}  // namespace tangentrep
