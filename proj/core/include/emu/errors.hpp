#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emu {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in an assertion, formula, or file; carries a 0-based offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Assertion references an identifier the variable set does not declare, or a
/// primed/unprimed variable where it is not allowed.
class MalformedAssertion : public Error {
 public:
  using Error::Error;
};

/// Primed atom evaluated without a next state.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its domain (e.g. weight of a non-transition).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A rho_s transition is not covered by any weight rule.
class WeightCoverError : public Error {
 public:
  using Error::Error;
};

class InvalidCredit : public Error {
 public:
  using Error::Error;
};

/// Explicit state enumeration limit exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class BoundMismatch : public Error {
 public:
  using Error::Error;
};

/// Formula is not monotone, not closed where required, uses an unbound
/// relational variable, or belongs to the wrong fragment.
class FormulaError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Violated internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace emu
