#pragma once

#include <stdexcept>
#include <string>

namespace gdnls {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the admissible set (ω ∉ Ω, |z| ≥ 1, bad step, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A σ (or other scalar) outside the range an operation is defined for.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public DomainError {
 public:
  using DomainError::DomainError;
};

class MultipleRootsError : public Error {
 public:
  using Error::Error;
};

class GridTooSmallError : public DomainError {
 public:
  GridTooSmallError(const std::string& what, double min_length)
      : DomainError(what), min_length_(min_length) {}
  double min_length() const noexcept { return min_length_; }

 private:
  double min_length_;
};

class NotDegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

class InconsistentBranchError : public Error {
 public:
  using Error::Error;
};

class BlowupError : public Error {
 public:
  using Error::Error;
};

class BoundaryContaminationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gdnls
