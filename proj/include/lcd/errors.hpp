#pragma once

#include <stdexcept>
#include <string>

namespace lcd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A scale parameter, radius or probability outside its admissible range.
class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// Quadrature did not reach its tolerance, or produced a non-finite value.
class NumericFailure : public Error {
public:
  NumericFailure(const std::string &what, double error_estimate)
      : Error(what), error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

private:
  double error_estimate_;
};

/// Operation invoked on an object that cannot support it (e.g. a sampling
/// grid that does not cover the distribution).
class InvalidState : public Error {
public:
  using Error::Error;
};

/// Requested work exceeds a configured cap.
class ResourceLimit : public Error {
public:
  using Error::Error;
};

} // namespace lcd
