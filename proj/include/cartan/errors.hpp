#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cartan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (matrix files, factor files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An input violates an operation's precondition (shape, unitarity, qubit count).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A matrix does not have the cosine-sine block pattern. Carries the first
/// offending entry.
class StructureError : public PreconditionError {
 public:
  StructureError(const std::string& what, std::size_t row, std::size_t col)
      : PreconditionError(what), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// An iterative kernel failed to converge or a consistency check failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cartan
