#include "qso/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qso/errors.hpp"

namespace qso {

namespace {

constexpr double kSimplexTol = 1e-10;
constexpr double kNegativeEigenTol = 1e-12;
constexpr double kKernelTol = 1e-12;
constexpr double kRelativeFloor = -1e-10;

// Clamp rounding negatives to zero, reject genuine negatives, renormalize.
RealVector clean_spectrum(const RealVector& values) {
  RealVector out = values;
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    if (out(k) < -kNegativeEigenTol) {
      throw InvalidDensity("entropy: eigenvalue " + std::to_string(out(k)) + " is negative");
    }
    out(k) = std::clamp(out(k), 0.0, 1.0);
  }
  return out / out.sum();
}

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double RelativeEntropy::as_double() const {
  return infinite ? std::numeric_limits<double>::infinity() : value;
}

double envelope_shrink() { return 1.0 - std::exp(-1.0); }

EntropyValue shannon(const RealVector& p) {
  if (!p.allFinite()) throw DomainError("shannon: non-finite probabilities");
  if (p.size() == 0) throw DomainError("shannon: empty distribution");
  if (p.minCoeff() < -kSimplexTol) throw DomainError("shannon: negative probability");
  if (std::abs(p.sum() - 1.0) > kSimplexTol) throw DomainError("shannon: probabilities do not sum to 1");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) sum -= x_log_x(std::max(p(k), 0.0));
  return {std::max(sum, 0.0)};
}

EntropyValue vn_entropy(const DensityOperator& rho) {
  return shannon(clean_spectrum(eig_hermitian(rho.matrix()).values));
}

RelativeEntropy relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative_entropy: dimension mismatch");

  const auto sig = eig_hermitian(sigma.matrix());
  double cross = 0.0;  // tr(rho ln sigma) restricted to supp(sigma)
  for (Eigen::Index k = 0; k < sig.values.size(); ++k) {
    const auto v = sig.vectors.col(k);
    const double overlap = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    if (sig.values(k) <= kKernelTol) {
      if (overlap > kKernelTol) return {0.0, true};
      continue;
    }
    cross += overlap * std::log(sig.values(k));
  }

  const RealVector lam = clean_spectrum(eig_hermitian(rho.matrix()).values);
  double self = 0.0;  // tr(rho ln rho)
  for (Eigen::Index k = 0; k < lam.size(); ++k) self += x_log_x(lam(k));

  double value = self - cross;
  if (value < 0.0 && value >= kRelativeFloor) value = 0.0;
  return {value, false};
}

double fannes_bound(double eps, Eigen::Index d) {
  if (!(eps > 0.0) || eps > std::exp(-1.0)) {
    throw DomainError("fannes_bound: eps must lie in (0, 1/e]");
  }
  if (d < 1) throw DomainError("fannes_bound: dimension must be positive");
  return eps * std::log(static_cast<double>(d)) - eps * std::log(eps);
}

std::pair<double, double> decay_product_bound(double t, double eps) {
  if (!(eps > 0.0)) throw DomainError("decay_product_bound: eps must be positive");
  if (!(t >= 0.0)) throw DomainError("decay_product_bound: t must be non-negative");
  const double a = envelope_shrink();
  return {t * std::exp(-eps * t), std::exp(-a * eps * t) / eps};
}

double ConvergenceEnvelope::single_term(double t) const {
  return k_const * std::exp(-a * sigma * t);
}

double ConvergenceEnvelope::entropy_bound(double t) const {
  const double decay = std::exp(-sigma * t);
  return std::log(static_cast<double>(dim)) * amplitude_m * decay -
         amplitude_m * std::log(amplitude_m) * decay + amplitude_m * std::exp(-a * sigma * t);
}

double ConvergenceEnvelope::relative_bound(double t) const {
  if (!d_const) throw DomainError("relative_bound: envelope has no ||ln rho(0)|| constant");
  return entropy_bound(t) + *d_const * amplitude_m * std::exp(-sigma * t);
}

ConvergenceEnvelope entropy_envelope(double m, double sigma, Eigen::Index d) {
  if (!(m > 0.0)) throw DomainError("entropy_envelope: M must be positive");
  if (!(sigma > 0.0)) throw DomainError("entropy_envelope: sigma must be positive");
  if (d < 2) throw DomainError("entropy_envelope: dimension must be at least 2");
  ConvergenceEnvelope env;
  env.amplitude_m = m;
  env.sigma = sigma;
  env.dim = d;
  env.a = envelope_shrink();
  env.k_const = std::log(static_cast<double>(d)) * m - m * std::log(m) + m;
  env.t_start = -(1.0 / sigma) * std::log(1.0 / (std::exp(1.0) * m));
  return env;
}

ConvergenceEnvelope relative_entropy_envelope(double m, double sigma, Eigen::Index d,
                                              const DensityOperator& rho0) {
  if (rho0.dim() != d) throw DimensionError("relative_entropy_envelope: dimension mismatch");
  const double smallest = eig_hermitian(rho0.matrix()).values.minCoeff();
  if (smallest <= tolerance::kPositiveDefinite) {
    throw SingularInitialState("initial state is not positive definite (min eigenvalue " +
                               std::to_string(smallest) + ")");
  }
  ConvergenceEnvelope env = entropy_envelope(m, sigma, d);
  env.d_const = logm_posdef(rho0.matrix()).norm();
  return env;
}

}  // namespace qso
