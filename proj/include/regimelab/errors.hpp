#pragma once

#include <stdexcept>
#include <string>

namespace regimelab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or parameter set (bad slope sign, kappa outside [0,1],
// malformed grid spec, non-finite input).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed input document (not parseable as JSON at all).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid document violating the corpus schema. Carries the
// offending turn index when one is known (-1 otherwise).
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what, int turn = -1)
      : Error(what), turn_(turn) {}
  int turn() const noexcept { return turn_; }

 private:
  int turn_;
};

// Turn indices out of order, duplicated, or corpus empty.
class OrderError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

// Mismatched vector lengths between related sequences.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Non-finite value produced where a finite one is required. Carries the
// offending turn index when one is known (-1 otherwise).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what, int turn = -1)
      : Error(what), turn_(turn) {}
  int turn() const noexcept { return turn_; }

 private:
  int turn_;
};

// Requested a derivative check across the non-differentiable point of |G|.
class KinkError : public Error {
 public:
  using Error::Error;
};

// Calibration-based selection is undefined (no MN-labeled turns); the
// caller must supply lambda explicitly.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure (missing file, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace regimelab
