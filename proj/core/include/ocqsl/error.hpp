#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocqsl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A kernel received or would produce a non-finite value.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// A truncated basis failed its completeness check.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::size_t index, double defect)
      : Error(what), index_(index), defect_(defect) {}

  std::size_t index() const noexcept { return index_; }
  double defect() const noexcept { return defect_; }

 private:
  std::size_t index_;
  double defect_;
};

/// Cutoff doubling moved the retained spectrum by more than the tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double drift)
      : Error(what), drift_(drift) {}

  double drift() const noexcept { return drift_; }

 private:
  double drift_;
};

/// Requested survival threshold lies below the minimum the dynamics reaches.
class BelowDynamicalFloor : public Error {
 public:
  BelowDynamicalFloor(const std::string& what, double min_fidelity)
      : Error(what), min_fidelity_(min_fidelity) {}

  double min_fidelity() const noexcept { return min_fidelity_; }

 private:
  double min_fidelity_;
};

/// |chi| exceeds 1 by more than the clamp tolerance.
class InvalidOverlap : public Error {
 public:
  using Error::Error;
};

/// A speed-limit bound whose denominator vanishes.
class UndefinedBound : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ocqsl
