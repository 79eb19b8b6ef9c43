#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qso/matkit.hpp"

namespace qso::verify {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;  // worst-case figure, printed alongside the verdict

  bool passed() const { return failures == 0 && cases > 0; }
};

/// Maps an arbitrary square matrix to (what should be) the nearest density operator.
using ProjectionFn = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// The library projection, project_to_density(m).density.matrix().
ComplexMatrix library_projection(const ComplexMatrix& m);

/// |S(rho) - S(sigma)| <= fannes_bound(||rho - sigma||_HS, d) + 1e-12 for `pairs`
/// Hilbert-Schmidt-random pairs per d in {2, 3, 4} with distance <= 1/e.
SuiteResult fannes_suite(std::uint64_t seed, std::size_t pairs = 2000);

/// t e^{-eps t} <= e^{-a eps t}/eps on random (t, eps) in (0,100] x (0,10], and
/// equality within 1e-12 relative at t = 1/(eps (1 - a)).
SuiteResult decay_product_suite(std::uint64_t seed, std::size_t samples = 10000);

/// Grid-search optimality on 2x2 inputs, membership, idempotence and
/// non-expansiveness of `project`.
SuiteResult projection_suite(std::uint64_t seed, const ProjectionFn& project = library_projection,
                             std::size_t oracle_cases = 500, std::size_t fuzz_cases = 1000);

/// unvec(vec(m)) == m and ||vec(m)||_2 == ||m||_HS on random matrices.
SuiteResult isometry_suite(std::uint64_t seed, std::size_t samples = 500);

/// Every random system reported observable has m >= d.
SuiteResult min_measurements_suite(std::uint64_t seed, std::size_t systems = 500);

/// RK4 truth versus the closed-form unitary solution at t = 10 with dt = 1e-3
/// on both built-in examples.
SuiteResult integrator_suite();

/// All suites, run concurrently with seeds derived from `seed`, in a fixed order.
std::vector<SuiteResult> run_all(std::uint64_t seed, const ProjectionFn& project = library_projection);

}  // namespace qso::verify
