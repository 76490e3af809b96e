#pragma once

#include <stdexcept>
#include <string>

namespace hamflow {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input: bad files, failed mesh validation, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to reach its contract (solver divergence, rank loss).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hamflow
