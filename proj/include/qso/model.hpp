#pragma once

#include <vector>

#include "qso/matkit.hpp"

namespace qso {

/// A d x d matrix that is Hermitian, positive semidefinite and of unit trace.
///
/// Construction validates the invariants with the tolerances below and stores
/// the Hermitian part of the input, so `matrix()` is exactly self-adjoint.
class DensityOperator {
 public:
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-10;

  explicit DensityOperator(const ComplexMatrix& m);

  /// Diagonal density from a probability vector.
  static DensityOperator diagonal(const std::vector<double>& probabilities);
  /// |psi><psi| / <psi|psi>.
  static DensityOperator pure(const ComplexVector& psi);
  /// I / d.
  static DensityOperator maximally_mixed(Eigen::Index d);

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

/// Closed quantum system: Hamiltonian (hbar = 1) plus measured observables.
class QuantumSystem {
 public:
  QuantumSystem(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> observables);

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<ComplexMatrix>& observables() const { return observables_; }
  Eigen::Index dim() const { return hamiltonian_.rows(); }
  Eigen::Index measurement_count() const { return static_cast<Eigen::Index>(observables_.size()); }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<ComplexMatrix> observables_;
};

/// Vectorized dynamics x' = A x, y = C x with x = vec(rho).
struct VectorizedSystem {
  ComplexMatrix a_matrix;  // d^2 x d^2
  ComplexMatrix c_matrix;  // m x d^2
  Eigen::Index d = 0;
  Eigen::Index m = 0;
};

/// Pauli matrix sigma_k for k in 0..3 (sigma_0 = I).
ComplexMatrix pauli(int k);
/// c0 sigma_0 + c1 sigma_1 + c2 sigma_2 + c3 sigma_3.
ComplexMatrix pauli_combination(double c0, double c1, double c2, double c3);
/// |k><k| in dimension d.
ComplexMatrix basis_projector(Eigen::Index k, Eigen::Index d);

/// A = -i (I kron H - H^T kron I), C rows = vec(M_k)^dagger.
VectorizedSystem build_vectorized(const QuantumSystem& sys);

/// y_k = tr(M_k rho). Throws DomainError if an imaginary part exceeds 1e-10.
RealVector output(const QuantumSystem& sys, const DensityOperator& rho);
/// Same map applied to an arbitrary (possibly non-density) d x d matrix.
RealVector output(const QuantumSystem& sys, const ComplexMatrix& rho);

/// Closed-form solution rho(t) = U rho0 U^dagger with U = exp(-iHt).
///
/// Diagonalizes H once so repeated evaluation is cheap.
class UnitaryPropagator {
 public:
  explicit UnitaryPropagator(const ComplexMatrix& hamiltonian);

  ComplexMatrix unitary(double t) const;
  ComplexMatrix propagate(const ComplexMatrix& rho0, double t) const;

 private:
  RealVector energies_;
  ComplexMatrix basis_;
};

DensityOperator exact_propagate(const QuantumSystem& sys, const DensityOperator& rho0, double t);

}  // namespace qso
