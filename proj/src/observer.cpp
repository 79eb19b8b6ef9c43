#include "qso/observer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qso/errors.hpp"

namespace qso {

ObservabilityReport observability(const VectorizedSystem& vs, double rel_tol) {
  const Eigen::Index n = vs.a_matrix.rows();
  const Eigen::Index m = vs.c_matrix.rows();
  const double a_norm = vs.a_matrix.norm();
  const double step_scale = a_norm > 0.0 ? 1.0 / a_norm : 1.0;

  ObservabilityReport report;
  report.obsv_matrix.resize(m * n, n);
  ComplexMatrix scaled(m * n, n);

  ComplexMatrix block = vs.c_matrix;
  ComplexMatrix scaled_block = vs.c_matrix;
  for (Eigen::Index k = 0; k < n; ++k) {
    report.obsv_matrix.middleRows(k * m, m) = block;
    scaled.middleRows(k * m, m) = scaled_block;
    block = block * vs.a_matrix;
    scaled_block = scaled_block * vs.a_matrix * step_scale;
  }

  report.rank = numerical_rank(scaled, rel_tol);
  report.observable = report.rank == n;
  report.min_measurements_ok = !report.observable || vs.m >= vs.d;
  return report;
}

ObserverDesign with_gain(const VectorizedSystem& vs, const ComplexMatrix& k) {
  const Eigen::Index n = vs.a_matrix.rows();
  if (k.rows() != n || k.cols() != vs.c_matrix.rows()) {
    throw DimensionError("with_gain: gain must be " + std::to_string(n) + "x" +
                         std::to_string(vs.c_matrix.rows()) + ", got " + std::to_string(k.rows()) +
                         "x" + std::to_string(k.cols()));
  }
  ObserverDesign design;
  design.gain = k;
  design.error_matrix = vs.a_matrix - k * vs.c_matrix;

  auto eig = eig_general_vectors(design.error_matrix);
  design.error_spectrum = std::move(eig.values);
  design.eigenvectors = std::move(eig.vectors);

  double abscissa = -std::numeric_limits<double>::infinity();
  for (const auto& lambda : design.error_spectrum) abscissa = std::max(abscissa, lambda.real());
  design.sigma = -abscissa;

  if (!(abscissa < -kStabilityMargin)) {
    std::ostringstream msg;
    msg << "A - KC is not Hurwitz; eigenvalues with Re >= -" << kStabilityMargin << ":";
    for (const auto& lambda : design.error_spectrum) {
      if (lambda.real() >= -kStabilityMargin) msg << " (" << lambda.real() << "," << lambda.imag() << ")";
    }
    throw UnstableDesign(msg.str(), design.error_spectrum);
  }
  design.eigvec_condition = condition_number(design.eigenvectors);
  return design;
}

ObserverDesign default_gain(const VectorizedSystem& vs) {
  return with_gain(vs, vs.c_matrix.adjoint());
}

AmplitudeBound amplitude_bound(const ObserverDesign& design, double e0_norm) {
  if (e0_norm < 0.0) throw DomainError("amplitude_bound: e0_norm must be non-negative");
  AmplitudeBound out;
  out.eigvec_condition = design.eigvec_condition;
  out.near_defective = !(design.eigvec_condition <= kDefectiveCondition);
  out.value = e0_norm == 0.0 ? 0.0 : design.eigvec_condition * e0_norm;
  return out;
}

AmplitudeBound amplitude_bound(const ObserverDesign& design, const ComplexVector& e0,
                               double horizon, int samples) {
  AmplitudeBound out = amplitude_bound(design, e0.norm());
  if (!out.near_defective || out.value == 0.0) return out;

  // Propagate with a fixed step propagator so the samples share one exponential.
  const double dt = horizon / std::max(samples, 1);
  const ComplexMatrix step = expm(design.error_matrix * dt);
  ComplexVector e = e0;
  double sup = e0.norm();
  for (int i = 1; i <= samples; ++i) {
    e = step * e;
    sup = std::max(sup, e.norm() * std::exp(design.sigma * dt * i));
  }
  out.value = 1.01 * sup;
  out.from_simulation = true;
  return out;
}

ComplexVector observer_rhs(const VectorizedSystem& vs, const ObserverDesign& design,
                           const ComplexVector& x_hat, const RealVector& y) {
  const Eigen::Index n = vs.a_matrix.rows();
  if (x_hat.size() != n || y.size() != vs.c_matrix.rows() || design.gain.rows() != n ||
      design.gain.cols() != y.size()) {
    throw DimensionError("observer_rhs: shape mismatch");
  }
  const ComplexVector innovation = y.cast<Complex>() - vs.c_matrix * x_hat;
  return vs.a_matrix * x_hat + design.gain * innovation;
}

}  // namespace qso
