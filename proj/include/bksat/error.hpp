#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bksat {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside the documented domain (k > n, p outside [0,1], ...).
class InvalidParameters : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A request the operation declines because the instance is too large.
class LimitExceeded : public Error {
public:
  using Error::Error;
};

/// Malformed textual input; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace bksat
