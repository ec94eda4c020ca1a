#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stidelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition or format.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed trace, manifest or symbol-table text. `line()` is 1-based.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised by the brute-force oracle when an input is too large to enumerate.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace stidelab
