#pragma once

#include <stdexcept>
#include <string>

namespace svlab {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Fock truncation discards more probability than the configured tolerance.
class TailToleranceError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

// Too few or otherwise unusable data points for a fit.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class ParityViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace svlab
