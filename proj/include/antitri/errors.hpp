#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace antitri {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is not skew-symmetric (or skew-Hermitian / Hermitian for the complex
/// entry points) within the validation tolerance.
class NotSkewError : public Error {
 public:
  NotSkewError(const std::string& what, std::ptrdiff_t row, std::ptrdiff_t col, double magnitude)
      : Error(what), row_(row), col_(col), magnitude_(magnitude) {}

  std::ptrdiff_t row() const noexcept { return row_; }
  std::ptrdiff_t col() const noexcept { return col_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::ptrdiff_t row_;
  std::ptrdiff_t col_;
  double magnitude_;
};

/// A structural precondition (antitriangular shape, arrowhead pattern, order
/// parity) does not hold.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A transform was requested from data that cannot define one, e.g. a Givens
/// rotation from (0, 0) or a reflector from the zero vector.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// A computed result failed a numerical post-condition check.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A skew-Hermitian matrix with all eigenvalues on one half of the imaginary
/// axis; such a matrix has no block antitriangular form (a*i*I is invariant
/// under every unitary similarity).
class DefiniteMatrixError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace antitri
