#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A dense factorization hit a (near-)zero pivot.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// The unperturbed operator B could not be factorized.
class SingularBase : public Error {
 public:
  using Error::Error;
};

// det A vanished within the singularity guard, so B + Q is singular too.
class SingularPerturbation : public Error {
 public:
  using Error::Error;
};

// The truncated determinant det_m A vanished; the m-th approximation is undefined.
class TruncatedDetSingular : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

}  // namespace dyadic
