#pragma once

#include <stdexcept>
#include <string>

namespace optconv {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index or order outside the representable range of a grid.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed or mutually inconsistent arguments.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input that carries no usable information (identically zero, all in the dead band).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Kernel configuration outside the supported class (e.g. jumps away from 0).
class UnsupportedKernelError : public Error {
 public:
  using Error::Error;
};

/// The overdetermined interpolation system at the nodes sigma + m*pi/s is incompatible.
class InconsistentInterpolationError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the inputs is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace optconv
