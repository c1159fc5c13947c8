#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pursuit {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatch or an argument outside its documented domain.
struct DimensionError : Error {
  using Error::Error;
};

// A value-level invariant failed (non-finite entry, empty container,
// out-of-range index, malformed sparse signal, ...).
struct ValueError : Error {
  using Error::Error;
};

// A matrix that must have full column rank does not.
struct RankDeficiencyError : Error {
  RankDeficiencyError(const std::string& what, std::size_t column)
      : Error(what), column(column) {}
  std::size_t column;
};

// A column could not be normalized, or analysis input was not unit-norm.
struct NormalizationError : Error {
  NormalizationError(const std::string& what, std::size_t column)
      : Error(what), column(column) {}
  std::size_t column;
};

// Text input could not be parsed; `line` is 1-based.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line(line) {}
  std::size_t line;
};

// The brute-force support enumeration would exceed its cap.
struct EnumerationCapError : Error {
  using Error::Error;
};

// The boundary construction could not be completed.
struct ConstructionError : Error {
  using Error::Error;
};

}  // namespace pursuit
