#pragma once

#include <stdexcept>
#include <string>

namespace timqd {

// Quadrature ran out of refinements. Carries the last estimate so callers
// can decide whether it is still usable.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// The function does not change sign on the supplied bracket.
class InvalidBracketError : public std::invalid_argument {
 public:
  InvalidBracketError(double lo, double hi, double f_lo, double f_hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double lo_, hi_, f_lo_, f_hi_;
};

// A density matrix (or its parametrization) violates positivity, trace or
// symmetry constraints beyond tolerance.
class InvalidStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A 4x4 matrix has weight outside the X pattern, or complex entries where
// the X-state parametrization needs real ones. Indices are 1-based.
class PatternViolationError : public std::runtime_error {
 public:
  PatternViolationError(const std::string& what, int row, int col, double magnitude)
      : std::runtime_error(what), row_(row), col_(col), magnitude_(magnitude) {}

  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  int row_, col_;
  double magnitude_;
};

}  // namespace timqd
