#include "qso/matkit.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "qso/errors.hpp"

namespace qso {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw DomainError(std::string(what) + ": matrix has non-finite entries");
  }
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  require_square(m, "hermitize");
  return (m + m.adjoint()) / 2.0;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  if (a.rows() != b.rows()) {
    throw DimensionError("commutator: operands have different dimensions");
  }
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector vec(const ComplexMatrix& m) {
  // Eigen storage is column-major, so the raw buffer is already column-stacked.
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
  if (d < 0 || v.size() != d * d) {
    throw DimensionError("unvec: vector of length " + std::to_string(v.size()) +
                         " does not hold a " + std::to_string(d) + "x" + std::to_string(d) +
                         " matrix");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix unvec(const ComplexVector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  return unvec(v, d);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: operands have different shapes");
  }
  // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return (a.array().conjugate() * b.array()).sum();
}

double hs_norm(const ComplexMatrix& m) { return m.norm(); }

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= rel_tol * std::max(1.0, m.norm());
}

HermitianEigenSystem eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  require_finite(m, "eig_hermitian");
  if (!is_hermitian(m)) {
    throw DomainError("eig_hermitian: input is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to non-increasing.
  HermitianEigenSystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

GeneralEigenSystem eig_general_vectors(const ComplexMatrix& m) {
  require_square(m, "eig_general");
  require_finite(m, "eig_general");
  GeneralEigenSystem out;
  if (m.size() == 0) return out;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_general: complex Schur iteration did not converge");
  }
  const auto& values = solver.eigenvalues();
  out.values.assign(values.data(), values.data() + values.size());
  out.vectors = solver.eigenvectors();
  return out;
}

std::vector<Complex> eig_general(const ComplexMatrix& m) {
  require_square(m, "eig_general");
  require_finite(m, "eig_general");
  if (m.size() == 0) return {};
  Eigen::ComplexSchur<ComplexMatrix> schur(m, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("eig_general: complex Schur iteration did not converge");
  }
  const ComplexMatrix& t = schur.matrixT();
  std::vector<Complex> out(static_cast<std::size_t>(t.rows()));
  for (Eigen::Index i = 0; i < t.rows(); ++i) out[static_cast<std::size_t>(i)] = t(i, i);
  return out;
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  require_finite(m, "expm");
  return m.exp();
}

ComplexMatrix logm_posdef(const ComplexMatrix& m) {
  const auto eig = eig_hermitian(m);
  const double smallest = eig.values.size() ? eig.values.minCoeff() : 0.0;
  if (smallest <= tolerance::kPositiveDefinite) {
    throw DomainError("logm_posdef: matrix is not positive definite (min eigenvalue " +
                      std::to_string(smallest) + ")");
  }
  const RealVector logs = eig.values.array().log();
  return eig.vectors * logs.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

RealVector singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  require_finite(m, "singular_values");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double condition_number(const ComplexMatrix& m) {
  const RealVector s = singular_values(m);
  if (s.size() == 0) return 1.0;
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

Eigen::Index numerical_rank(const ComplexMatrix& m, double rel_tol) {
  const RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = rel_tol * s(0);
  return (s.array() > cutoff).count();
}

}  // namespace qso
