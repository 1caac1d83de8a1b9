#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace voltroute {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed a value that violates a documented precondition
// (dimension mismatch, out-of-range vertex id, nonpositive weight, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operation needs a connected graph.
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation was asked to run above its size cap.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Floating point produced a state the exact algorithm cannot reach
// (cycles in a potential-induced flow, residual flow after decomposition).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Text input could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace voltroute
