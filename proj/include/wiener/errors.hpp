#pragma once

#include <stdexcept>
#include <string>

namespace wiener {

// Root of every error raised by the library. The CLI maps the subclasses
// onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dense table, enumeration or search would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An input violates a mathematical hypothesis of the operation
// (|f| < 1 on the support, |A| too large for a separating map, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class SingularMapError : public Error {
 public:
  using Error::Error;
};

// Malformed argument: wrong dimension, non-prime modulus, unknown name.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& field, const std::string& what)
      : Error("line " + std::to_string(line) + ", field '" + field + "': " + what),
        line_(line),
        field_(field) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace wiener
