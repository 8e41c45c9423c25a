#pragma once

#include <stdexcept>
#include <string>

namespace qhv {

// Base class for every error this library throws deliberately.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operator or space constructed with an unusable dimension.
struct InvalidDimensionError : Error {
  using Error::Error;
};

// Tensor-slot bookkeeping violated (bad slot index, mismatched block size).
struct LayoutError : Error {
  using Error::Error;
};

// A matrix required to be Hermitian is not.
struct SymmetryError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of the function.
struct DomainError : Error {
  using Error::Error;
};

// Quadrature or iteration failed to reach the requested accuracy.
struct NumericalAccuracyError : Error {
  using Error::Error;
};

// Two inputs that must describe the same object disagree.
struct ConsistencyError : Error {
  using Error::Error;
};

// Liouvillian has more than one numerical null direction.
struct DegenerateKernelError : Error {
  int kernel_dim;
  DegenerateKernelError(const std::string& what, int dim)
      : Error(what), kernel_dim(dim) {}
};

// Explicit integrator step exceeds its stability bound.
struct StabilityError : Error {
  using Error::Error;
};

// Config file missing, malformed, or containing out-of-range values.
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem failure on an output path.
struct FileError : Error {
  using Error::Error;
};

}  // namespace qhv
