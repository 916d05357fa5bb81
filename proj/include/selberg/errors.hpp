#pragma once

#include <stdexcept>
#include <string>

namespace selberg {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected before any computation (bad spec, violated precondition).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed spec or coefficient file.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An argument landed on a pole of Gamma or of the series.
class PoleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A numerical procedure could not reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Evaluation budget exhausted.
class BudgetExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace selberg
