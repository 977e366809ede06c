#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematical precondition failures. The CLI maps these to exit code 1.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No nontrivial solitary wave (or no functional split) exists for the
/// requested (omega, c).
class UnsupportedRegime : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoRoot : public DomainError {
 public:
  using DomainError::DomainError;
};

class ComplexInput : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotInKPlus : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A NaN or Inf showed up in a field, usually an unstable time step.
class NonFinite : public DomainError {
 public:
  using DomainError::DomainError;
};

/// File parsing and writing failures. The CLI maps these to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dnls
