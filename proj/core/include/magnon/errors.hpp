#pragma once

#include <stdexcept>
#include <string>

namespace magnon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad field values, unknown keys, malformed files,
/// sweep axes that reference unknown parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The drift matrix is not Hurwitz, so no steady state exists.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver or linear-solve failure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A covariance matrix violates the uncertainty principle. Always indicates
/// an upstream bug; never clamped away.
class UnphysicalStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace magnon
