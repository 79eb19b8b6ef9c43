#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qso/entropy.hpp"
#include "qso/matkit.hpp"
#include "qso/model.hpp"
#include "qso/observer.hpp"

namespace qso {

struct SimConfig {
  double t_final = 60.0;
  double dt = 1e-3;
  int record_every = 10;
  /// Take rho(t) from the closed-form unitary solution instead of integrating it.
  bool use_exact_truth = true;
  /// Keep rho(t) and rho_hat(t) at every record point.
  bool keep_states = false;

  void validate() const;
};

using VectorField = std::function<ComplexVector(double t, const ComplexVector& x)>;

/// One classical Runge-Kutta step from (t, x). Throws NumericalError on non-finite output.
ComplexVector rk4_step(const VectorField& f, double t, const ComplexVector& x, double dt);
/// Autonomous variant.
ComplexVector rk4_step(const std::function<ComplexVector(const ComplexVector&)>& f,
                       const ComplexVector& x, double dt);

/// Time series produced by `simulate`. All lists have one entry per record point.
struct Trajectory {
  Eigen::Index dim = 0;
  std::vector<double> times;
  std::vector<double> err_norm;  // ||rho_hat - rho||_HS after projection
  std::vector<double> s_true;
  std::vector<double> s_hat;
  std::vector<double> s_rel;        // S(rho_hat || rho); +inf when unbounded
  std::vector<double> env_err;      // M exp(-sigma t)
  std::vector<double> env_entropy;  // entropy envelope (proof form)
  std::vector<double> env_rel;      // relative-entropy envelope; NaN when unavailable
  std::vector<bool> applicable;     // t >= T

  std::vector<ComplexMatrix> rho;      // only with keep_states
  std::vector<ComplexMatrix> rho_hat;  // only with keep_states

  AmplitudeBound amplitude;
  double sigma = 0.0;
  std::optional<ConvergenceEnvelope> envelope;           // absent when M = 0
  std::optional<ConvergenceEnvelope> relative_envelope;  // absent for singular rho0
  std::vector<std::string> warnings;

  std::size_t size() const { return times.size(); }
};

/// Co-simulate the true system and the projected Luenberger observer.
Trajectory simulate(const QuantumSystem& sys, const ObserverDesign& design,
                    const DensityOperator& rho0, const DensityOperator& rho_hat0,
                    const SimConfig& cfg);

struct EnvelopeViolation {
  std::size_t index = 0;
  double t = 0.0;
  std::string quantity;  // "entropy" or "relative"
  double value = 0.0;
  double bound = 0.0;
};

struct EnvelopeCheck {
  bool passed = true;
  std::size_t checked_points = 0;
  std::size_t entropy_violations = 0;
  std::size_t relative_violations = 0;
  /// Points where the single-exponential K exp(-a sigma t) form is exceeded. Diagnostic only.
  std::size_t single_term_exceedances = 0;
  std::optional<EnvelopeViolation> first_violation;
};

/// Absolute slack absorbing integrator error when comparing against envelopes.
inline constexpr double kEnvelopeSlack = 1e-9;

/// Compare every applicable record point of `traj` against its envelopes.
EnvelopeCheck check_envelopes(const Trajectory& traj, double slack = kEnvelopeSlack);

}  // namespace qso
