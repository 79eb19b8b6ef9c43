#pragma once

#include <vector>

#include "qso/matkit.hpp"
#include "qso/model.hpp"

namespace qso {

struct ObservabilityReport {
  ComplexMatrix obsv_matrix;  // [C; CA; ...; CA^(d^2-1)]
  Eigen::Index rank = 0;
  bool observable = false;
  /// Necessary condition m >= d; always true when the system is not observable.
  bool min_measurements_ok = true;
};

/// Kalman rank test on the vectorized pair (A, C).
///
/// The rank is evaluated on a copy whose k-th block row is scaled by
/// ||A||^-k. Block scaling leaves the rank unchanged but keeps CA^k from
/// swamping C in the singular-value cutoff once d^2 grows past a few.
ObservabilityReport observability(const VectorizedSystem& vs, double rel_tol = tolerance::kRank);

/// Luenberger gain together with the spectral data of the error dynamics e' = (A - KC) e.
struct ObserverDesign {
  ComplexMatrix gain;          // d^2 x m
  ComplexMatrix error_matrix;  // A - KC
  std::vector<Complex> error_spectrum;
  ComplexMatrix eigenvectors;  // unit-norm columns of A - KC
  double sigma = 0.0;          // -max Re(lambda)
  double eigvec_condition = 1.0;
};

/// Eigenvalues with real part above -kStabilityMargin count as unstable.
inline constexpr double kStabilityMargin = 1e-9;
/// Eigenvector condition numbers above this mark the modal bound unreliable.
inline constexpr double kDefectiveCondition = 1e8;

/// K = C^dagger. Throws UnstableDesign if A - KC is not Hurwitz.
ObserverDesign default_gain(const VectorizedSystem& vs);
/// User-supplied K (d^2 x m). Throws DimensionError or UnstableDesign.
ObserverDesign with_gain(const VectorizedSystem& vs, const ComplexMatrix& k);

/// Transient constant M with ||e(t)||_2 <= M exp(-sigma t).
struct AmplitudeBound {
  double value = 0.0;
  double eigvec_condition = 1.0;
  /// Set when the eigenvector matrix is near-defective (condition > 1e8).
  bool near_defective = false;
  /// Set when `value` came from sampling the error trajectory.
  bool from_simulation = false;
};

/// Modal bound M = cond(V) * ||e0||.
AmplitudeBound amplitude_bound(const ObserverDesign& design, double e0_norm);

/// Modal bound for a concrete e(0). When the eigenvectors are near-defective
/// this falls back to sup_t ||exp((A-KC)t) e0|| exp(sigma t) over `samples`
/// points in [0, horizon], padded by 1%; the result then only covers that horizon.
AmplitudeBound amplitude_bound(const ObserverDesign& design, const ComplexVector& e0,
                               double horizon = 60.0, int samples = 2000);

/// A x_hat + K (y - C x_hat).
ComplexVector observer_rhs(const VectorizedSystem& vs, const ObserverDesign& design,
                           const ComplexVector& x_hat, const RealVector& y);

}  // namespace qso
