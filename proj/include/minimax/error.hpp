#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace minimax {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of matrices/vectors disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input contains values the operation cannot accept (non-finite entries, negative weights, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The simplex exceeded its iteration budget.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Basis-spec syntax error. `position` is a 0-based character offset into the spec text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string found, std::vector<std::string> expected);

  std::size_t position() const noexcept { return position_; }
  const std::string& found() const noexcept { return found_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string found_;
  std::vector<std::string> expected_;
};

/// A variable index exceeds the declared point dimension, or an operation needs 1-D data.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A basis function could not be evaluated at a point (division by zero, overflow).
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::size_t point, std::size_t function)
      : Error(what), point_(point), function_(function) {}
  std::size_t point() const noexcept { return point_; }
  std::size_t function() const noexcept { return function_; }

 private:
  std::size_t point_;
  std::size_t function_;
};

/// LP solve did not produce an optimum for a problem that must have one.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Exact interpolation or rank-deficient design: structural checks do not apply.
class DegenerateCase : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DuplicateNodeError : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle bounds exceeded.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle found no nonsingular feasible witness system.
class NoCandidate : public Error {
 public:
  using Error::Error;
};

}  // namespace minimax
