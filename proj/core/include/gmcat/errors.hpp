#pragma once

#include <stdexcept>
#include <string>

namespace gmcat {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or mismatched input data (shapes, missing table entries).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A group action that was required to be free has a fixed point.
class FreenessError : public Error {
 public:
  using Error::Error;
};

// An operation needed an arity beyond the operad truncation or a checker bound.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// An internal consistency condition failed; signals corrupted structure data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation was not met (e.g. functor is not a cover).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Unreadable input file or schema violation.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmcat
