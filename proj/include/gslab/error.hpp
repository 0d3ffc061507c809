#pragma once

#include <stdexcept>
#include <string>

namespace gslab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: violated precondition, malformed config, unknown key.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical diagnostic failed (non-convergence, failed self-check, bad fit).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gslab
