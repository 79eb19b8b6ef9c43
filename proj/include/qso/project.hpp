#pragma once

#include "qso/matkit.hpp"
#include "qso/model.hpp"

namespace qso {

struct ProjectionResult {
  DensityOperator density;
  double distance = 0.0;  // ||input - density||_HS
};

/// Euclidean projection onto the probability simplex {p >= 0, sum p = 1}.
///
/// Sort descending, take the largest k with v_(k) - (sum_{j<=k} v_(j) - 1)/k > 0,
/// shift by that threshold and clamp at zero.
RealVector simplex_project(const RealVector& v);

/// Hilbert-Schmidt-nearest density operator.
///
/// The input is first replaced by its Hermitian part (the nearest Hermitian
/// matrix), its spectrum is projected onto the simplex, and the eigenbasis is
/// reused for the reconstruction. Eigenvalues that land in [-1e-14, 0) after
/// reconstruction are clamped and the trace renormalized.
ProjectionResult project_to_density(const ComplexMatrix& m);

}  // namespace qso
