#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace islands {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed point-set input. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An operation was called outside its domain (dimension mismatch,
/// degenerate input where general position is required, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds a configured enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace islands
