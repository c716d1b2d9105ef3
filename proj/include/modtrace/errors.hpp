#ifndef MODTRACE_ERRORS_HPP
#define MODTRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modtrace {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Structurally broken input: bad indices, wrong vector lengths, unparsable scalars.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but violates a Hopf algebra or module axiom.
class InvalidHopfData : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A mathematical guarantee failed to hold; indicates a bug or inconsistent data.
class InternalError : public Error {
 public:
  using Error::Error;
};

class NotAbsolutelySimple : public Error {
 public:
  using Error::Error;
};

class NotAmbi : public Error {
 public:
  using Error::Error;
};

class NoSplitting : public Error {
 public:
  using Error::Error;
};

class DegenerateEv : public Error {
 public:
  using Error::Error;
};

class UncertifiedDecomposition : public Error {
 public:
  using Error::Error;
};

class NonScalarEndomorphism : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace modtrace

#endif  // MODTRACE_ERRORS_HPP
