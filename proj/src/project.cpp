#include "qso/project.hpp"

#include <algorithm>
#include <functional>

#include "qso/errors.hpp"

namespace qso {

namespace {
constexpr double kClampTol = 1e-14;
}

RealVector simplex_project(const RealVector& v) {
  if (!v.allFinite()) throw DomainError("simplex_project: non-finite entries");
  const Eigen::Index n = v.size();
  if (n == 0) throw DomainError("simplex_project: empty vector");

  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  double prefix = 0.0;
  double threshold = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    prefix += sorted[static_cast<std::size_t>(k)];
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).max(0.0);
}

ProjectionResult project_to_density(const ComplexMatrix& m) {
  require_square(m, "project_to_density");
  require_finite(m, "project_to_density");
  const Eigen::Index d = m.rows();
  if (d == 0) throw DimensionError("project_to_density: empty matrix");

  const ComplexMatrix h = hermitize(m);
  const auto eig = eig_hermitian(h);
  const RealVector weights = simplex_project(eig.values);
  ComplexMatrix rho = eig.vectors * weights.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  rho = hermitize(rho);

  // Rounding in the reconstruction can leave tiny negative eigenvalues.
  auto check = eig_hermitian(rho);
  if (check.values.minCoeff() < 0.0) {
    RealVector clamped = check.values;
    for (Eigen::Index k = 0; k < clamped.size(); ++k) {
      if (clamped(k) < 0.0 && clamped(k) >= -kClampTol) clamped(k) = 0.0;
    }
    rho = check.vectors * clamped.cast<Complex>().asDiagonal() * check.vectors.adjoint();
    rho = hermitize(rho);
  }
  rho /= rho.trace().real();

  return ProjectionResult{DensityOperator(rho), (m - rho).norm()};
}

}  // namespace qso
