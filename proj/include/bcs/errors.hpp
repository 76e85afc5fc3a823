#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcs {

// A parameter outside its documented domain (p outside [0,1], d outside (0,1), ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the smoothed-l0 solvers when an iterate stops being finite or
// leaves the [-1e6, 1e6] guard band.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& solver, int outer_iteration)
      : std::runtime_error(solver + ": iterate diverged in outer iteration " +
                           std::to_string(outer_iteration)),
        outer_iteration_(outer_iteration) {}

  int outer_iteration() const { return outer_iteration_; }

 private:
  int outer_iteration_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace bcs
