#pragma once

#include <stdexcept>
#include <string>

namespace majorant {

/// Operands disagree on variable count, output count, degree cap or length.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact and float values were mixed.
class ModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural invariant of an equation or series was violated.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input document or literal.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (I - a01) has no inverse.
class SingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iteration did not produce the convergence a caller relies on.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monotone comparison iterates decreased; the comparison map is not of
/// positive type or the evaluation is broken.
class MonotonicityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace majorant
