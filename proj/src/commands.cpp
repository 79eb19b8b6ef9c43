#include "qso/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "qso/entropy.hpp"
#include "qso/errors.hpp"
#include "qso/observer.hpp"

namespace qso::cli {

namespace {

std::string fmt(const char* spec, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

std::string fmt_complex(const Complex& z) {
  char buf[96];
  // Print -0 as 0 so repeated runs and platforms agree.
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
  std::snprintf(buf, sizeof buf, "%+.6f %c %.6fi", re, im < 0 ? '-' : '+', std::abs(im));
  return buf;
}

std::vector<Complex> sorted_spectrum(std::vector<Complex> spectrum) {
  std::sort(spectrum.begin(), spectrum.end(), [](const Complex& a, const Complex& b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return spectrum;
}

ObserverDesign design_for(const ExperimentConfig& cfg, const VectorizedSystem& vs) {
  if (std::holds_alternative<ComplexMatrix>(cfg.gain)) {
    return with_gain(vs, std::get<ComplexMatrix>(cfg.gain));
  }
  return default_gain(vs);
}

void print_spectrum(std::ostream& out, const std::vector<Complex>& spectrum) {
  for (const auto& z : sorted_spectrum(spectrum)) out << "  " << fmt_complex(z) << "\n";
}

// Observability section shared by analyze and simulate. Returns false when not observable.
bool report_observability(const ExperimentConfig& cfg, const VectorizedSystem& vs, std::ostream& out) {
  const auto report = observability(vs);
  out << "experiment: " << cfg.name << "\n";
  out << "dimension d: " << vs.d << "\n";
  out << "measurements m: " << vs.m << "\n";
  out << "rank O(A,C): " << report.rank << " of " << vs.d * vs.d << "\n";
  if (report.observable) {
    out << "observable: yes\n";
  } else if (vs.m < vs.d) {
    out << "observable: no (not observable (m=" << vs.m << " < d=" << vs.d << "))\n";
  } else {
    out << "observable: no (rank " << report.rank << " < d^2=" << vs.d * vs.d << ")\n";
  }
  out << "minimum measurements m >= d: " << (vs.m >= vs.d ? "satisfied" : "violated") << "\n";
  if (!report.min_measurements_ok) out << "warning: observable with m < d contradicts the rank bound\n";
  return report.observable;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "N/A";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt("%.12e", v);
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QSO_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return value;
  }
  return kDefaultSeed;
}

int cmd_analyze(const ExperimentConfig& cfg, std::ostream& out) {
  const VectorizedSystem vs = build_vectorized(cfg.system);
  if (!report_observability(cfg, vs, out)) return kNotObservable;

  ObserverDesign design;
  try {
    design = design_for(cfg, vs);
  } catch (const UnstableDesign& e) {
    out << "observer design: UNSTABLE\n";
    out << "error spectrum (A - KC):\n";
    print_spectrum(out, e.spectrum());
    out << "offending eigenvalues have Re >= " << -kStabilityMargin << "\n";
    return kUnstableDesign;
  }

  const double e0 = (cfg.rho_hat0.matrix() - cfg.rho0.matrix()).norm();
  const AmplitudeBound m = amplitude_bound(design, ComplexVector(vec(cfg.rho_hat0.matrix()) - vec(cfg.rho0.matrix())),
                                           cfg.sim.t_final);
  out << "gain: " << (std::holds_alternative<AdjointGain>(cfg.gain) ? "K = C^dagger" : "explicit") << "\n";
  out << "error spectrum (A - KC):\n";
  print_spectrum(out, design.error_spectrum);
  out << "decay rate sigma: " << fmt("%.6f", design.sigma) << "\n";
  out << "eigenvector condition: " << fmt("%.6f", design.eigvec_condition)
      << (m.near_defective ? " (near-defective)" : "") << "\n";
  out << "initial error ||e(0)||: " << fmt("%.6f", e0) << "\n";
  out << "amplitude M: " << fmt("%.6f", m.value) << (m.from_simulation ? " (sampled)" : "") << "\n";
  if (m.value > 0.0) {
    const auto env = entropy_envelope(m.value, design.sigma, vs.d);
    out << "entropy envelope: a = " << fmt("%.6f", env.a) << ", K = " << fmt("%.6f", env.k_const)
        << ", T = " << fmt("%.6f", env.t_start) << "\n";
  }
  return kOk;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,err_norm,s_true,s_hat,s_rel,env_err,env_entropy,env_rel,envelopes_applicable\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << fmt("%.6f", traj.times[i]) << ',' << csv_number(traj.err_norm[i]) << ','
        << csv_number(traj.s_true[i]) << ',' << csv_number(traj.s_hat[i]) << ','
        << csv_number(traj.s_rel[i]) << ',' << csv_number(traj.env_err[i]) << ','
        << csv_number(traj.env_entropy[i]) << ',' << csv_number(traj.env_rel[i]) << ','
        << (traj.applicable[i] ? '1' : '0') << '\n';
  }
}

int cmd_simulate(const ExperimentConfig& cfg, const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err) {
  SimConfig sim = cfg.sim;
  if (opts.dt) sim.dt = *opts.dt;
  if (opts.t_final) sim.t_final = *opts.t_final;
  try {
    sim.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  const VectorizedSystem vs = build_vectorized(cfg.system);
  if (!observability(vs).observable) {
    report_observability(cfg, vs, err);
    return kNotObservable;
  }
  ObserverDesign design;
  try {
    design = design_for(cfg, vs);
  } catch (const UnstableDesign& e) {
    err << "error: " << e.what() << "\n";
    return kUnstableDesign;
  }

  const Trajectory traj = simulate(cfg.system, design, cfg.rho0, cfg.rho_hat0, sim);
  const EnvelopeCheck check = check_envelopes(traj);

  const std::optional<std::string> path = opts.out_path ? opts.out_path : cfg.csv_path;
  std::ostream* summary = &out;
  if (path) {
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *path << "\n";
      return kConfigError;
    }
    write_csv(traj, file);
  } else {
    write_csv(traj, out);
    summary = &err;
  }

  for (const auto& w : traj.warnings) err << "warning: " << w << "\n";

  const std::size_t last = traj.size() - 1;
  std::ostream& s = *summary;
  s << "experiment: " << cfg.name << "\n";
  s << "records: " << traj.size() << " (t = 0 .. " << fmt("%.6g", traj.times[last]) << ")\n";
  if (path) s << "csv: " << *path << "\n";
  s << "sigma: " << fmt("%.6f", traj.sigma) << ", M: " << fmt("%.6f", traj.amplitude.value);
  if (traj.envelope) s << ", T: " << fmt("%.6f", traj.envelope->t_start);
  s << "\n";
  s << "final err_norm: " << csv_number(traj.err_norm[last]) << "\n";
  s << "final |S(rho_hat) - S(rho)|: " << csv_number(std::abs(traj.s_hat[last] - traj.s_true[last])) << "\n";
  s << "final S(rho_hat||rho): " << csv_number(traj.s_rel[last]) << "\n";
  if (traj.envelope && !traj.relative_envelope) s << "relative-entropy envelope: N/A\n";
  s << "envelope check: " << (check.passed ? "pass" : "FAIL") << " (" << check.checked_points
    << " points checked";
  if (check.single_term_exceedances > 0) {
    s << ", single-term form exceeded at " << check.single_term_exceedances << " points";
  }
  s << ")\n";
  if (check.first_violation) {
    const auto& v = *check.first_violation;
    s << "first violation: " << v.quantity << " at t = " << fmt("%.6f", v.t) << ": "
      << csv_number(v.value) << " > " << csv_number(v.bound) << "\n";
  }
  return check.passed ? kOk : kVerificationFailed;
}

int cmd_verify(std::uint64_t seed, std::ostream& out, const verify::ProjectionFn& project) {
  out << "seed: " << seed << "\n";
  bool ok = true;
  for (const auto& r : verify::run_all(seed, project)) {
    ok = ok && r.passed();
    out << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.cases << " cases, "
        << r.failures << " failures, " << r.detail << "\n";
  }
  out << (ok ? "all suites passed\n" : "verification FAILED\n");
  return ok ? kOk : kVerificationFailed;
}

}  // namespace qso::cli
