#include "qso/sim.hpp"

#include <cmath>
#include <limits>

#include "qso/errors.hpp"
#include "qso/project.hpp"

namespace qso {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("SimConfig: dt must be positive");
  if (!(t_final >= dt)) throw DomainError("SimConfig: t_final must be at least dt");
  if (record_every < 1) throw DomainError("SimConfig: record_every must be at least 1");
}

ComplexVector rk4_step(const VectorField& f, double t, const ComplexVector& x, double dt) {
  if (!(dt > 0.0)) throw DomainError("rk4_step: dt must be positive");
  const ComplexVector k1 = f(t, x);
  const ComplexVector k2 = f(t + dt / 2, x + (dt / 2) * k1);
  const ComplexVector k3 = f(t + dt / 2, x + (dt / 2) * k2);
  const ComplexVector k4 = f(t + dt, x + dt * k3);
  ComplexVector next = x + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) throw NumericalError("rk4_step: state blew up (non-finite values)");
  return next;
}

ComplexVector rk4_step(const std::function<ComplexVector(const ComplexVector&)>& f,
                       const ComplexVector& x, double dt) {
  return rk4_step([&f](double, const ComplexVector& v) { return f(v); }, 0.0, x, dt);
}

namespace {

struct Recorder {
  const QuantumSystem& sys;
  const SimConfig& cfg;
  Trajectory& traj;

  void record(double t, const ComplexMatrix& rho_raw, const ComplexVector& x_hat) {
    const DensityOperator rho(hermitize(rho_raw));
    const ProjectionResult proj = project_to_density(unvec(x_hat, sys.dim()));
    const DensityOperator& rho_hat = proj.density;

    traj.times.push_back(t);
    traj.err_norm.push_back((rho_hat.matrix() - rho.matrix()).norm());
    traj.s_true.push_back(vn_entropy(rho).nats);
    traj.s_hat.push_back(vn_entropy(rho_hat).nats);
    traj.s_rel.push_back(relative_entropy(rho_hat, rho).as_double());

    const double m = traj.amplitude.value;
    traj.env_err.push_back(m * std::exp(-traj.sigma * t));
    if (traj.envelope) {
      traj.env_entropy.push_back(traj.envelope->entropy_bound(t));
      traj.applicable.push_back(traj.envelope->applicable(t));
    } else {
      // M = 0: the estimate is exact, both envelopes vanish identically.
      traj.env_entropy.push_back(0.0);
      traj.applicable.push_back(true);
    }
    if (traj.relative_envelope) {
      traj.env_rel.push_back(traj.relative_envelope->relative_bound(t));
    } else if (!traj.envelope) {
      traj.env_rel.push_back(0.0);
    } else {
      traj.env_rel.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    if (cfg.keep_states) {
      traj.rho.push_back(rho.matrix());
      traj.rho_hat.push_back(rho_hat.matrix());
    }
  }
};

}  // namespace

Trajectory simulate(const QuantumSystem& sys, const ObserverDesign& design,
                    const DensityOperator& rho0, const DensityOperator& rho_hat0,
                    const SimConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = sys.dim();
  if (rho0.dim() != d || rho_hat0.dim() != d) {
    throw DimensionError("simulate: initial states do not match the system dimension");
  }
  const VectorizedSystem vs = build_vectorized(sys);
  if (design.gain.rows() != d * d || design.gain.cols() != vs.m) {
    throw DimensionError("simulate: observer gain does not match the system");
  }
  if (!(design.sigma > 0.0)) {
    throw UnstableDesign("simulate: observer design is not stable", design.error_spectrum);
  }

  Trajectory traj;
  traj.dim = d;
  traj.sigma = design.sigma;

  const ComplexVector x0 = vec(rho0.matrix());
  const ComplexVector x_hat0 = vec(rho_hat0.matrix());
  traj.amplitude = amplitude_bound(design, ComplexVector(x_hat0 - x0), cfg.t_final);
  if (traj.amplitude.near_defective) {
    traj.warnings.push_back("error dynamics are near-defective; M taken from the sampled error trajectory");
  }
  if (traj.amplitude.value > 0.0) {
    traj.envelope = entropy_envelope(traj.amplitude.value, design.sigma, d);
    try {
      traj.relative_envelope = relative_entropy_envelope(traj.amplitude.value, design.sigma, d, rho0);
    } catch (const SingularInitialState& e) {
      traj.warnings.push_back(std::string("relative-entropy envelope unavailable: ") + e.what());
    }
  }

  const auto steps = static_cast<long long>(std::llround(cfg.t_final / cfg.dt));
  Recorder recorder{sys, cfg, traj};
  auto should_record = [&](long long k) { return k % cfg.record_every == 0 || k == steps; };

  if (cfg.use_exact_truth) {
    const UnitaryPropagator truth(sys.hamiltonian());
    const ComplexMatrix& c = vs.c_matrix;
    auto measured = [&](double t) -> RealVector {
      return (c * vec(truth.propagate(rho0.matrix(), t))).real();
    };
    const VectorField field = [&](double t, const ComplexVector& x_hat) {
      return observer_rhs(vs, design, x_hat, measured(t));
    };
    ComplexVector x_hat = x_hat0;
    recorder.record(0.0, rho0.matrix(), x_hat);
    for (long long k = 1; k <= steps; ++k) {
      const double t = static_cast<double>(k - 1) * cfg.dt;
      x_hat = rk4_step(field, t, x_hat, cfg.dt);
      if (should_record(k)) {
        const double tk = static_cast<double>(k) * cfg.dt;
        recorder.record(tk, truth.propagate(rho0.matrix(), tk), x_hat);
      }
    }
  } else {
    // Integrate truth and observer together as z = [x; x_hat].
    const Eigen::Index n = d * d;
    const ComplexMatrix& a = vs.a_matrix;
    const ComplexMatrix& c = vs.c_matrix;
    const ComplexMatrix& gain = design.gain;
    const VectorField field = [&](double, const ComplexVector& z) {
      const auto x = z.head(n);
      const auto x_hat = z.tail(n);
      ComplexVector dz(2 * n);
      dz.head(n) = a * x;
      dz.tail(n) = a * x_hat + gain * (c * x - c * x_hat);
      return dz;
    };
    ComplexVector z(2 * n);
    z << x0, x_hat0;
    recorder.record(0.0, rho0.matrix(), x_hat0);
    for (long long k = 1; k <= steps; ++k) {
      z = rk4_step(field, static_cast<double>(k - 1) * cfg.dt, z, cfg.dt);
      if (should_record(k)) {
        recorder.record(static_cast<double>(k) * cfg.dt, unvec(z.head(n), d), z.tail(n));
      }
    }
  }
  return traj;
}

EnvelopeCheck check_envelopes(const Trajectory& traj, double slack) {
  EnvelopeCheck out;
  auto note = [&](std::size_t i, const char* what, double value, double bound) {
    if (!out.first_violation) out.first_violation = EnvelopeViolation{i, traj.times[i], what, value, bound};
  };
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (!traj.applicable[i]) continue;
    ++out.checked_points;
    const double gap = std::abs(traj.s_hat[i] - traj.s_true[i]);
    if (!(gap <= traj.env_entropy[i] + slack)) {
      ++out.entropy_violations;
      note(i, "entropy", gap, traj.env_entropy[i]);
    }
    if (traj.envelope && gap > traj.envelope->single_term(traj.times[i]) + slack) {
      ++out.single_term_exceedances;
    }
    const double rel = traj.s_rel[i];
    if (!std::isnan(traj.env_rel[i]) && !(rel <= traj.env_rel[i] + slack)) {
      ++out.relative_violations;
      note(i, "relative", rel, traj.env_rel[i]);
    }
  }
  out.passed = out.entropy_violations == 0 && out.relative_violations == 0;
  return out;
}

}  // namespace qso
