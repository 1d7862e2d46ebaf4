#pragma once

#include <stdexcept>
#include <string>

namespace hyperblocks {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: a bad group spec, an element out of range, bad JSON.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or search bound would be exceeded.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The inputs fall outside the hypotheses an operation is defined for
/// (for example an even group order where odd order is required).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A valid u-v swap was requested but one of its four clauses fails.
class InvalidSwap : public Error {
 public:
  InvalidSwap(int clause, const std::string& what)
      : Error("invalid swap (clause " + std::to_string(clause) + "): " + what),
        clause_(clause) {}

  int clause() const noexcept { return clause_; }

 private:
  int clause_;
};

/// An internal invariant that the theory guarantees was observed to fail.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperblocks
