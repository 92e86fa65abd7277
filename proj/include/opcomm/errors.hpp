#pragma once

#include <stdexcept>
#include <string>

namespace opcomm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A standard interval with an index outside [0, 2^level) or a negative level.
class InvalidIntervalError : public Error {
public:
  using Error::Error;
};

/// Sources or targets of a partial-isometry family overlap.
class DisjointnessError : public Error {
public:
  using Error::Error;
};

/// No length-preserving translation exists (mismatched measures).
class EquivalenceError : public Error {
public:
  using Error::Error;
};

/// Construction level below the minimum the object needs.
class LevelError : public Error {
public:
  using Error::Error;
};

/// Requested matrix representation level is finer than supported or coarser
/// than the element's grid.
class RefinementError : public Error {
public:
  using Error::Error;
};

/// An operation's stated precondition does not hold (e.g. non-unitary input).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A trace-zero precondition failed; the trace of a commutator is zero.
class TraceObstructionError : public Error {
public:
  using Error::Error;
};

/// Matrix dimensions incompatible with the operation.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Attempt to invert a singular matrix.
class SingularMatrixError : public Error {
public:
  using Error::Error;
};

}  // namespace opcomm
