#include "qso/model.hpp"

#include <cmath>
#include <string>

#include "qso/errors.hpp"

namespace qso {

namespace {

constexpr double kOutputImagTol = 1e-10;

const Complex kI{0.0, 1.0};

}  // namespace

DensityOperator::DensityOperator(const ComplexMatrix& m) {
  require_square(m, "DensityOperator");
  if (m.rows() == 0) throw InvalidDensity("DensityOperator: empty matrix");
  if (!m.allFinite()) throw InvalidDensity("DensityOperator: non-finite entries");
  if (!is_hermitian(m)) throw InvalidDensity("DensityOperator: matrix is not Hermitian");
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw InvalidDensity("DensityOperator: trace is " + std::to_string(trace) + ", expected 1");
  }
  matrix_ = hermitize(m);
  const double smallest = eig_hermitian(matrix_).values.minCoeff();
  if (smallest < -kEigenTol) {
    throw InvalidDensity("DensityOperator: negative eigenvalue " + std::to_string(smallest));
  }
}

DensityOperator DensityOperator::diagonal(const std::vector<double>& probabilities) {
  RealVector p = Eigen::Map<const RealVector>(probabilities.data(),
                                              static_cast<Eigen::Index>(probabilities.size()));
  return DensityOperator(p.cast<Complex>().asDiagonal().toDenseMatrix());
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) throw InvalidDensity("DensityOperator::pure: zero state vector");
  return DensityOperator(psi * psi.adjoint() / norm2);
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index d) {
  return DensityOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

QuantumSystem::QuantumSystem(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> observables)
    : hamiltonian_(std::move(hamiltonian)), observables_(std::move(observables)) {
  require_square(hamiltonian_, "QuantumSystem hamiltonian");
  require_finite(hamiltonian_, "QuantumSystem hamiltonian");
  if (hamiltonian_.rows() == 0) throw DomainError("QuantumSystem: empty Hamiltonian");
  if (!is_hermitian(hamiltonian_)) throw DomainError("QuantumSystem: Hamiltonian is not Hermitian");
  if (observables_.empty()) throw DomainError("QuantumSystem: at least one observable is required");
  for (std::size_t k = 0; k < observables_.size(); ++k) {
    const auto& obs = observables_[k];
    if (obs.rows() != dim() || obs.cols() != dim()) {
      throw DimensionError("QuantumSystem: observable " + std::to_string(k) +
                           " does not match the Hamiltonian dimension");
    }
    require_finite(obs, "QuantumSystem observable");
    if (!is_hermitian(obs)) {
      throw DomainError("QuantumSystem: observable " + std::to_string(k) + " is not Hermitian");
    }
  }
}

ComplexMatrix pauli(int k) {
  ComplexMatrix s(2, 2);
  switch (k) {
    case 0: s << 1.0, 0.0, 0.0, 1.0; break;
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -kI, kI, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw DomainError("pauli: index must be in 0..3");
  }
  return s;
}

ComplexMatrix pauli_combination(double c0, double c1, double c2, double c3) {
  return c0 * pauli(0) + c1 * pauli(1) + c2 * pauli(2) + c3 * pauli(3);
}

ComplexMatrix basis_projector(Eigen::Index k, Eigen::Index d) {
  if (k < 0 || k >= d) throw DomainError("basis_projector: index out of range");
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(k, k) = 1.0;
  return p;
}

VectorizedSystem build_vectorized(const QuantumSystem& sys) {
  const Eigen::Index d = sys.dim();
  const ComplexMatrix& h = sys.hamiltonian();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  VectorizedSystem vs;
  vs.d = d;
  vs.m = sys.measurement_count();
  vs.a_matrix = -kI * (kron(id, h) - kron(h.transpose(), id));
  vs.c_matrix.resize(vs.m, d * d);
  for (Eigen::Index k = 0; k < vs.m; ++k) {
    vs.c_matrix.row(k) = vec(sys.observables()[static_cast<std::size_t>(k)]).adjoint();
  }
  return vs;
}

RealVector output(const QuantumSystem& sys, const ComplexMatrix& rho) {
  if (rho.rows() != sys.dim() || rho.cols() != sys.dim()) {
    throw DimensionError("output: state dimension does not match the system");
  }
  RealVector y(sys.measurement_count());
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    const Complex value = (sys.observables()[static_cast<std::size_t>(k)] * rho).trace();
    if (std::abs(value.imag()) > kOutputImagTol) {
      throw DomainError("output: tr(M_" + std::to_string(k) + " rho) has imaginary part " +
                        std::to_string(value.imag()));
    }
    y(k) = value.real();
  }
  return y;
}

RealVector output(const QuantumSystem& sys, const DensityOperator& rho) {
  return output(sys, rho.matrix());
}

UnitaryPropagator::UnitaryPropagator(const ComplexMatrix& hamiltonian) {
  const auto eig = eig_hermitian(hamiltonian);
  energies_ = eig.values;
  basis_ = eig.vectors;
}

ComplexMatrix UnitaryPropagator::unitary(double t) const {
  ComplexVector phases(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) {
    phases(k) = std::exp(-kI * energies_(k) * t);
  }
  return basis_ * phases.asDiagonal() * basis_.adjoint();
}

ComplexMatrix UnitaryPropagator::propagate(const ComplexMatrix& rho0, double t) const {
  const ComplexMatrix u = unitary(t);
  return u * rho0 * u.adjoint();
}

DensityOperator exact_propagate(const QuantumSystem& sys, const DensityOperator& rho0, double t) {
  if (t < 0.0) throw DomainError("exact_propagate: t must be non-negative");
  if (rho0.dim() != sys.dim()) throw DimensionError("exact_propagate: dimension mismatch");
  const ComplexMatrix u = expm(-kI * t * sys.hamiltonian());
  return DensityOperator(u * rho0.matrix() * u.adjoint());
}

}  // namespace qso
