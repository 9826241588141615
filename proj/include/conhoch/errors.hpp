#pragma once

#include <stdexcept>
#include <string>

namespace conhoch {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

/// Operands built over flat models of different dimension.
class ModelMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class NotWobs : public Error {
 public:
  using Error::Error;
};

class UnsupportedTag : public Error {
 public:
  using Error::Error;
};

class NotCocycle : public Error {
 public:
  using Error::Error;
};

class NotConstraint : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A linear solve that the cohomology computation guarantees to succeed did
/// not. Seeing this means a counterexample to the classification was found.
class SolveFailure : public Error {
 public:
  using Error::Error;
};

/// An invariant that holds by construction was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace conhoch
