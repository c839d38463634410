#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace splab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Raised when a denominator spans more than one non-unit radicand.
class UnsupportedDenominator : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class LambdaOne : public PreconditionError {
 public:
  LambdaOne() : PreconditionError("lambda = 1 makes the dilate system singular") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

class UnsupportedEvaluation : public Error {
 public:
  using Error::Error;
};

class InsufficientPrimes : public Error {
 public:
  using Error::Error;
};

class DiscriminantFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace splab
