#pragma once

#include <optional>
#include <utility>

#include "qso/matkit.hpp"
#include "qso/model.hpp"

namespace qso {

/// Entropy in nats.
struct EntropyValue {
  double nats = 0.0;
};

/// Quantum relative entropy; `infinite` when the support condition fails.
struct RelativeEntropy {
  double value = 0.0;
  bool infinite = false;

  /// value, or +inf when infinite.
  double as_double() const;
};

/// 1 - 1/e, the exponent shrink factor of the entropy envelopes.
double envelope_shrink();

/// -sum p ln p with 0 ln 0 = 0. `p` must lie on the simplex within 1e-10.
EntropyValue shannon(const RealVector& p);

/// S(rho) = -tr(rho ln rho), via the spectrum of rho.
EntropyValue vn_entropy(const DensityOperator& rho);

/// S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma).
///
/// Eigenvalues of sigma at or below 1e-12 span its kernel; any overlap
/// <v|rho|v> above 1e-12 with that kernel makes the result infinite.
RelativeEntropy relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// eps ln d - eps ln eps, for 0 < eps <= 1/e.
double fannes_bound(double eps, Eigen::Index d);

/// (t exp(-eps t), exp(-a eps t) / eps) with a = 1 - 1/e.
std::pair<double, double> decay_product_bound(double t, double eps);

/// Constants of the exponential entropy envelopes for a decay
/// ||rho_hat - rho|| <= M exp(-sigma t).
struct ConvergenceEnvelope {
  double amplitude_m = 0.0;
  double sigma = 0.0;
  Eigen::Index dim = 0;
  double a = 0.0;        // 1 - 1/e
  double k_const = 0.0;  // ln(d) M - M ln M + M
  double t_start = 0.0;  // -(1/sigma) ln(1/(e M)); M exp(-sigma t) <= 1/e from here on
  std::optional<double> d_const;  // ||ln rho(0)||_HS, relative-entropy envelope only

  bool applicable(double t) const { return t >= t_start; }

  /// Single-exponential form K exp(-a sigma t).
  double single_term(double t) const;
  /// ln(d) M e^{-sigma t} - M ln(M) e^{-sigma t} + M e^{-a sigma t}.
  double entropy_bound(double t) const;
  /// entropy_bound(t) + D M e^{-sigma t}; requires d_const.
  double relative_bound(double t) const;
};

/// Envelope on |S(rho) - S(rho_hat)|. Requires m > 0, sigma > 0, d >= 2.
ConvergenceEnvelope entropy_envelope(double m, double sigma, Eigen::Index d);

/// Envelope on S(rho_hat || rho). Throws SingularInitialState if rho0 is not
/// positive definite (min eigenvalue <= 1e-12).
ConvergenceEnvelope relative_entropy_envelope(double m, double sigma, Eigen::Index d,
                                              const DensityOperator& rho0);

}  // namespace qso
