#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kbrg {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter value or combination (bad N, tau out of range, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Mathematically undefined request (self-loop probability, divergent moment).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested object would exceed the configured memory cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed or insufficient input data.
class DataError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver gave up; carries the last observed residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Some points of a scan failed; the message lists them.
class PartialResultError : public NumericalError {
 public:
  PartialResultError(const std::string& what, std::vector<double> failed)
      : NumericalError(what), failed_(std::move(failed)) {}
  const std::vector<double>& failed() const noexcept { return failed_; }

 private:
  std::vector<double> failed_;
};

}  // namespace kbrg
