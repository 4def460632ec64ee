#pragma once

#include <stdexcept>
#include <string>

namespace gma {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible (or a dimension is empty).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value contains NaN or infinity where a finite number is required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// The design matrix does not have full column rank.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

/// An iterative scheme hit its iteration cap before reaching tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Morphism composition attempted on a broken source/target chain.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// A translation handed to the hom-set bijection does not connect the
/// stated endpoints.
class NotAMorphismError : public Error {
 public:
  using Error::Error;
};

/// Gradient-descent step size outside the stable range.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// A limit certificate was requested from an unconverged trace.
class NotConvergedError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gma
