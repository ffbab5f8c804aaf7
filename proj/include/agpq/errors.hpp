#pragma once

#include <stdexcept>
#include <string>

namespace agpq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionLimit : public Error {
 public:
  using Error::Error;
};

// An AGP/BCS state whose norm vanishes (fewer than N nonzero geminal coefficients).
class DegenerateState : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class NonHermitianObservable : public Error {
 public:
  using Error::Error;
};

class ZeroCorrelation : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace agpq
