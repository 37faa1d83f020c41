#pragma once

#include <stdexcept>
#include <string>

namespace lks {

// Expression text could not be parsed. `offset` is the 1-based byte
// position of the first offending character (or one past the end of
// the input for truncated expressions).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Numerical evaluation hit a singularity (division by zero, overflow).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A domain/invariant check failed (bad config, invalid marking, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested census row does not exist for the given (case, k, l, j).
class InvalidRowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation that needs a simple zero was handed a degenerate one.
class DegenerateZeroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// f vanishes identically on a subinterval; the zero set is not discrete.
class ZeroPlateauError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The component set of {f != 0} is too large / accumulating.
class NotFiniteTypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lks
