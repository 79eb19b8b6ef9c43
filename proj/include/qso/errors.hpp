#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qso {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or dimension mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input violates a precondition (non-Hermitian, non-finite, out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative numerical routine did not converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A matrix does not satisfy the density-operator invariants.
class InvalidDensity : public Error {
 public:
  using Error::Error;
};

// The error dynamics A - KC have an eigenvalue with non-negative real part.
class UnstableDesign : public Error {
 public:
  UnstableDesign(const std::string& what, std::vector<std::complex<double>> spectrum)
      : Error(what), spectrum_(std::move(spectrum)) {}

  const std::vector<std::complex<double>>& spectrum() const { return spectrum_; }

 private:
  std::vector<std::complex<double>> spectrum_;
};

// The relative-entropy envelope needs a positive definite initial state.
class SingularInitialState : public Error {
 public:
  using Error::Error;
};

}  // namespace qso
