#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qso {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix, m = Q diag(values) Q^dagger.
/// Eigenvalues are sorted non-increasing and columns of `vectors` match.
struct HermitianEigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};

namespace tolerance {
/// Relative threshold for ||m - m^dagger||_HS.
inline constexpr double kHermitian = 1e-10;
/// Relative singular-value threshold used by numerical_rank.
inline constexpr double kRank = 1e-10;
/// Smallest eigenvalue accepted by logm_posdef.
inline constexpr double kPositiveDefinite = 1e-12;
}  // namespace tolerance

void require_square(const ComplexMatrix& m, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);

/// (m + m^dagger) / 2.
ComplexMatrix hermitize(const ComplexMatrix& m);

/// ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization, so that vec(X R Y) = (Y^T kron X) vec(R).
ComplexVector vec(const ComplexMatrix& m);
/// Inverse of vec for a d x d matrix; throws unless v has d*d entries.
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d);
/// Inverse of vec with d inferred; throws if the length is not a perfect square.
ComplexMatrix unvec(const ComplexVector& v);

/// tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// sqrt(tr(m^dagger m)), the Frobenius norm.
double hs_norm(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = tolerance::kHermitian);

HermitianEigenSystem eig_hermitian(const ComplexMatrix& m);

/// Eigenvalues of a general complex matrix through its complex Schur form.
/// Throws NumericalError if the QR iteration fails to converge.
std::vector<Complex> eig_general(const ComplexMatrix& m);

/// Eigenvalues and (unit-norm column) eigenvectors of a general matrix.
struct GeneralEigenSystem {
  std::vector<Complex> values;
  ComplexMatrix vectors;
};
GeneralEigenSystem eig_general_vectors(const ComplexMatrix& m);

/// Matrix exponential (scaling and squaring with Pade approximants).
ComplexMatrix expm(const ComplexMatrix& m);

/// Principal logarithm of a Hermitian positive definite matrix, Q ln(L) Q^dagger.
ComplexMatrix logm_posdef(const ComplexMatrix& m);

/// Singular values in non-increasing order.
RealVector singular_values(const ComplexMatrix& m);

/// 2-norm condition number, sigma_max / sigma_min (infinity when singular).
double condition_number(const ComplexMatrix& m);

/// Number of singular values above rel_tol times the largest one.
Eigen::Index numerical_rank(const ComplexMatrix& m, double rel_tol = tolerance::kRank);

}  // namespace qso
