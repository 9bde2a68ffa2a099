#pragma once

#include <stdexcept>
#include <string>

namespace semidec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A shift left the stored range of a non-periodic axis.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible degrees (pairing, cup overflow, field slots).
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different lattices.
class TopologyMismatch : public Error {
 public:
  using Error::Error;
};

/// A transcribed table or vector fails the relation it is supposed to satisfy.
class TranscriptionFault : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (JSON syntax, missing keys, wrong types).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a semantic constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside an integrator or solver.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace semidec
