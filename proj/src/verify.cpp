#include "qso/verify.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <random>

#include "qso/config.hpp"
#include "qso/entropy.hpp"
#include "qso/model.hpp"
#include "qso/observer.hpp"
#include "qso/oracles.hpp"
#include "qso/project.hpp"
#include "qso/random.hpp"
#include "qso/sim.hpp"

namespace qso::verify {

namespace {

std::string format_detail(const char* label, double value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.3e", label, value);
  return buf;
}

// Density check independent of the DensityOperator constructor.
bool is_density(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || !m.allFinite()) return false;
  if ((m - m.adjoint()).norm() > tol) return false;
  if (std::abs(m.trace().real() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace

ComplexMatrix library_projection(const ComplexMatrix& m) {
  return project_to_density(m).density.matrix();
}

SuiteResult fannes_suite(std::uint64_t seed, std::size_t pairs) {
  SuiteResult out{"fannes", 0, 0, {}};
  Rng rng(seed);
  const double limit = std::exp(-1.0);
  double worst_margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index d = 2; d <= 4; ++d) {
    std::size_t accepted = 0;
    std::size_t attempts = 0;
    while (accepted < pairs) {
      if (++attempts > 2000 * pairs) {
        ++out.failures;
        out.detail = "rejection sampling exhausted";
        return out;
      }
      const DensityOperator rho = random_density(rng, d);
      const DensityOperator sigma = random_density(rng, d);
      const double eps = (rho.matrix() - sigma.matrix()).norm();
      if (!(eps > 0.0) || eps > limit) continue;
      ++accepted;
      ++out.cases;
      const double gap = std::abs(vn_entropy(rho).nats - vn_entropy(sigma).nats);
      const double margin = fannes_bound(eps, d) + 1e-12 - gap;
      worst_margin = std::min(worst_margin, margin);
      if (margin < 0.0) ++out.failures;
    }
  }
  out.detail = format_detail("min_margin", worst_margin);
  return out;
}

SuiteResult decay_product_suite(std::uint64_t seed, std::size_t samples) {
  SuiteResult out{"decay-product", 0, 0, {}};
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = envelope_shrink();
  double worst_tight = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = 100.0 * (1.0 - unit(rng));  // (0, 100]
    const double eps = 10.0 * (1.0 - unit(rng));
    const auto [lhs, rhs] = decay_product_bound(t, eps);
    ++out.cases;
    if (!(lhs <= rhs)) ++out.failures;

    const auto [tl, tr] = decay_product_bound(1.0 / (eps * (1.0 - a)), eps);
    const double rel = std::abs(tl - tr) / std::abs(tr);
    worst_tight = std::max(worst_tight, rel);
    ++out.cases;
    if (!(rel <= 1e-12)) ++out.failures;
  }
  out.detail = format_detail("max_tightness_rel", worst_tight);
  return out;
}

SuiteResult projection_suite(std::uint64_t seed, const ProjectionFn& project,
                             std::size_t oracle_cases, std::size_t fuzz_cases) {
  SuiteResult out{"projection", 0, 0, {}};
  Rng rng(seed);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> scale(0.1, 2.0);
  double worst_oracle = 0.0;

  for (std::size_t i = 0; i < oracle_cases; ++i) {
    const ComplexMatrix h = random_hermitian(rng, 2) * scale(rng);
    const Eigen::Matrix2cd reference = oracle::bloch_grid_projection(h);
    const ComplexMatrix got = project(h);
    ++out.cases;
    const double gap = got.rows() == 2 ? (got - ComplexMatrix(reference)).norm() : INFINITY;
    worst_oracle = std::max(worst_oracle, gap);
    if (!(gap <= 2e-6) || !is_density(got, 1e-10)) ++out.failures;
  }

  for (std::size_t i = 0; i < fuzz_cases; ++i) {
    const Eigen::Index d = dim(rng);
    const ComplexMatrix m = random_hermitian(rng, d) * scale(rng);
    const ComplexMatrix rho = random_density(rng, d).matrix();
    const ComplexMatrix p = project(m);
    ++out.cases;
    bool ok = is_density(p, 1e-10);
    ok = ok && (project(p) - p).norm() <= 1e-12 * std::max(1.0, p.norm()) + 1e-12;
    ok = ok && (p - rho).norm() <= (m - rho).norm() + 1e-12;
    ok = ok && (project(rho) - rho).norm() <= 1e-12;
    if (!ok) ++out.failures;
  }
  out.detail = format_detail("max_oracle_gap", worst_oracle);
  return out;
}

SuiteResult isometry_suite(std::uint64_t seed, std::size_t samples) {
  SuiteResult out{"isometry", 0, 0, {}};
  Rng rng(seed);
  std::uniform_int_distribution<int> dim(1, 6);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Eigen::Index d = dim(rng);
    const ComplexMatrix m = random_gaussian(rng, d, d);
    const ComplexVector v = vec(m);
    ++out.cases;
    const double norm_gap = std::abs(v.norm() - m.norm());
    worst = std::max(worst, norm_gap);
    if (unvec(v, d) != m || norm_gap > 1e-12) ++out.failures;
  }
  out.detail = format_detail("max_norm_gap", worst);
  return out;
}

SuiteResult min_measurements_suite(std::uint64_t seed, std::size_t systems) {
  SuiteResult out{"min-measurements", 0, 0, {}};
  Rng rng(seed);
  std::uniform_int_distribution<int> dim(2, 4);
  std::size_t observable = 0;
  for (std::size_t i = 0; i < systems; ++i) {
    const Eigen::Index d = dim(rng);
    std::uniform_int_distribution<int> count(1, static_cast<int>(d * d));
    const int m = count(rng);
    std::vector<ComplexMatrix> observables;
    for (int k = 0; k < m; ++k) observables.push_back(random_hermitian(rng, d));
    const QuantumSystem sys(random_hermitian(rng, d), std::move(observables));
    const auto report = observability(build_vectorized(sys));
    ++out.cases;
    if (report.observable) {
      ++observable;
      if (m < d) ++out.failures;
    }
  }
  out.detail = "observable=" + std::to_string(observable);
  return out;
}

SuiteResult integrator_suite() {
  SuiteResult out{"integrator", 0, 0, {}};
  double worst = 0.0;
  for (const char* name : {"two-dim", "laser-atom"}) {
    const ExperimentConfig cfg = builtin_config(name);
    const VectorizedSystem vs = build_vectorized(cfg.system);
    ComplexVector x = vec(cfg.rho0.matrix());
    const double dt = 1e-3;
    const int steps = 10000;
    const auto field = [&vs](const ComplexVector& v) -> ComplexVector { return vs.a_matrix * v; };
    for (int k = 0; k < steps; ++k) x = rk4_step(field, x, dt);
    const ComplexMatrix exact = exact_propagate(cfg.system, cfg.rho0, dt * steps).matrix();
    const double err = (unvec(x, vs.d) - exact).norm();
    worst = std::max(worst, err);
    ++out.cases;
    if (!(err < 1e-8)) ++out.failures;
  }
  out.detail = format_detail("max_hs_error", worst);
  return out;
}

std::vector<SuiteResult> run_all(std::uint64_t seed, const ProjectionFn& project) {
  // Independent streams per suite so the report does not depend on scheduling.
  std::seed_seq seq{seed};
  std::vector<std::uint64_t> seeds(5);
  std::vector<std::uint32_t> raw(10);
  seq.generate(raw.begin(), raw.end());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    seeds[i] = (static_cast<std::uint64_t>(raw[2 * i]) << 32) | raw[2 * i + 1];
  }
  std::vector<std::future<SuiteResult>> jobs;
  jobs.push_back(std::async(std::launch::async, fannes_suite, seeds[0], std::size_t{2000}));
  jobs.push_back(std::async(std::launch::async, decay_product_suite, seeds[1], std::size_t{10000}));
  jobs.push_back(std::async(std::launch::async, [&project, s = seeds[2]] {
    return projection_suite(s, project);
  }));
  jobs.push_back(std::async(std::launch::async, isometry_suite, seeds[3], std::size_t{500}));
  jobs.push_back(std::async(std::launch::async, min_measurements_suite, seeds[4], std::size_t{500}));
  jobs.push_back(std::async(std::launch::async, integrator_suite));

  std::vector<SuiteResult> results;
  for (auto& job : jobs) results.push_back(job.get());
  return results;
}

}  // namespace qso::verify
