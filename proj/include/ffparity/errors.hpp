#pragma once

#include <stdexcept>
#include <string>

namespace ffp {

/// Arithmetic outside the domain of an operation (division by zero, pole at a place, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed text input: polynomial syntax, curve files, place strings.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds the desk-scale bounds (enumeration sizes, field sizes).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural identity that must hold for valid input failed; indicates a bug upstream.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SingularCurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for curves whose j-invariant is constant.
class IsotrivialCurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ffp
