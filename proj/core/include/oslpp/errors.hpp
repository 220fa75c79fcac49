#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oslpp {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or bytes. `line` is 1-based for text formats and 0
/// for binary ones; `offset` is a column (text) or byte offset (binary).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t offset)
      : Error(what), line_(line), offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

/// Well-formed input whose values break an invariant (non-finite, empty...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch, e.g. ragged CSV rows.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Caller passed an argument outside the documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A factorization or decomposition failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The synthetic generator could not satisfy its placement constraints.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace oslpp
