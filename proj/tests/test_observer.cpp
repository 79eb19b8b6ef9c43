#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qso/errors.hpp"
#include "qso/model.hpp"
#include "qso/observer.hpp"
#include "qso/random.hpp"

using namespace qso;

namespace {
const Complex I{0.0, 1.0};

QuantumSystem two_dim() {
  return QuantumSystem(pauli_combination(1.5, 1.0, 0.0, 0.5),
                       {basis_projector(0, 2), basis_projector(1, 2)});
}

QuantumSystem laser_atom() {
  ComplexMatrix h(2, 2);
  h << -0.5, 3.0, 3.0, 0.5;
  return QuantumSystem(h, {basis_projector(0, 2), basis_projector(1, 2)});
}

bool contains(const std::vector<Complex>& values, Complex z, double tol) {
  return std::any_of(values.begin(), values.end(), [&](Complex v) { return std::abs(v - z) < tol; });
}
}  // namespace

TEST_CASE("observability of the worked examples") {
  const auto report = observability(build_vectorized(two_dim()));
  CHECK(report.rank == 4);
  CHECK(report.observable);
  CHECK(report.min_measurements_ok);
  CHECK(report.obsv_matrix.rows() == 8);
  CHECK(report.obsv_matrix.cols() == 4);

  const auto laser = observability(build_vectorized(laser_atom()));
  CHECK(laser.rank == 4);
  CHECK(laser.observable);

  const auto single = observability(build_vectorized(
      QuantumSystem(pauli_combination(1.5, 1.0, 0.0, 0.5), {basis_projector(0, 2)})));
  CHECK_FALSE(single.observable);
  CHECK(single.rank < 4);
}

TEST_CASE("observability stacks C A^k") {
  const auto vs = build_vectorized(two_dim());
  const auto report = observability(vs);
  ComplexMatrix block = vs.c_matrix;
  for (int k = 0; k < 4; ++k) {
    CHECK((report.obsv_matrix.middleRows(2 * k, 2) - block).norm() == 0.0);
    block = block * vs.a_matrix;
  }
}

TEST_CASE("observable systems never have fewer than d measurements") {
  Rng rng(21);
  int observable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index d = 2 + trial % 3;
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d * d));
    std::vector<ComplexMatrix> obs;
    for (int k = 0; k < m; ++k) obs.push_back(random_hermitian(rng, d));
    const auto report = observability(build_vectorized(QuantumSystem(random_hermitian(rng, d), obs)));
    if (report.observable) {
      ++observable;
      CHECK(m >= d);
    }
    CHECK(report.min_measurements_ok);
  }
  CHECK(observable > 0);
}

TEST_CASE("default gain on the two-dimensional example") {
  const auto vs = build_vectorized(two_dim());
  const auto design = default_gain(vs);
  CHECK(design.gain == vs.c_matrix.adjoint());

  ComplexMatrix expected(4, 4);
  expected << -1, -I, I, 0,
              -I, I, 0, I,
              I, 0, -I, -I,
              0, I, -I, -1;
  CHECK((design.error_matrix - expected).norm() < 1e-15);

  REQUIRE(design.error_spectrum.size() == 4);
  CHECK(contains(design.error_spectrum, -1.0, 1e-3));
  CHECK(contains(design.error_spectrum, Complex(-0.3966, 2.1630), 1e-3));
  CHECK(contains(design.error_spectrum, Complex(-0.3966, -2.1630), 1e-3));
  CHECK(contains(design.error_spectrum, -0.2068, 1e-3));
  CHECK(design.sigma == doctest::Approx(0.2068).epsilon(5e-4));
}

TEST_CASE("default gain on the laser atom is stabilizing") {
  const auto design = default_gain(build_vectorized(laser_atom()));
  CHECK(design.sigma > 0.0);
  for (const auto& z : design.error_spectrum) CHECK(z.real() < 0.0);
}

TEST_CASE("unstable and malformed gains") {
  const auto vs = build_vectorized(two_dim());
  CHECK_THROWS_AS(with_gain(vs, ComplexMatrix::Zero(4, 2)), UnstableDesign);
  CHECK_THROWS_AS(with_gain(vs, ComplexMatrix::Zero(4, 3)), DimensionError);

  VectorizedSystem blind = vs;
  blind.c_matrix.setZero();
  try {
    default_gain(blind);
    FAIL("expected UnstableDesign");
  } catch (const UnstableDesign& e) {
    CHECK(e.spectrum().size() == 4);
  }
}

TEST_CASE("with_gain") {
  const auto vs = build_vectorized(two_dim());
  const auto a = default_gain(vs);
  const auto b = with_gain(vs, vs.c_matrix.adjoint());
  REQUIRE(a.error_spectrum.size() == b.error_spectrum.size());
  for (std::size_t i = 0; i < a.error_spectrum.size(); ++i) {
    CHECK(a.error_spectrum[i] == b.error_spectrum[i]);
  }
  const auto doubled = with_gain(vs, 2.0 * vs.c_matrix.adjoint());
  for (const auto& z : doubled.error_spectrum) CHECK(z.real() < 0.0);
  CHECK(doubled.sigma > 0.0);
}

TEST_CASE("amplitude_bound") {
  ObserverDesign normal;
  normal.error_matrix = ComplexMatrix::Zero(2, 2);
  normal.error_matrix.diagonal() << -1.0, -2.0;
  normal.eigenvectors = ComplexMatrix::Identity(2, 2);
  normal.eigvec_condition = 1.0;
  normal.sigma = 1.0;
  CHECK(amplitude_bound(normal, 1.0).value == doctest::Approx(1.0));
  CHECK(amplitude_bound(normal, 0.0).value == 0.0);
  CHECK_THROWS_AS(amplitude_bound(normal, -1.0), DomainError);

  // Two-dim example: the modal bound dominates the propagated error.
  const auto design = default_gain(build_vectorized(two_dim()));
  const ComplexVector e0 =
      vec(DensityOperator::diagonal({0.0, 1.0}).matrix() - DensityOperator::diagonal({0.25, 0.75}).matrix());
  const auto bound = amplitude_bound(design, e0);
  CHECK_FALSE(bound.near_defective);
  CHECK_FALSE(bound.from_simulation);
  CHECK(bound.value >= e0.norm());
  double sup = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double t = 0.1 * k;
    sup = std::max(sup, (expm(design.error_matrix * t) * e0).norm() * std::exp(design.sigma * t));
  }
  CHECK(sup <= bound.value);
}

TEST_CASE("amplitude_bound falls back to sampling for defective dynamics") {
  // Jordan block: eigenvectors are (numerically) parallel.
  ObserverDesign jordan;
  jordan.error_matrix.resize(2, 2);
  jordan.error_matrix << -1.0, 1.0, 0.0, -1.0;
  const auto eig = eig_general_vectors(jordan.error_matrix);
  jordan.eigenvectors = eig.vectors;
  jordan.eigvec_condition = condition_number(eig.vectors);
  jordan.sigma = 1.0;
  ComplexVector e0(2);
  e0 << 0.0, 1.0;
  const auto bound = amplitude_bound(jordan, e0, 10.0, 1000);
  CHECK(bound.near_defective);
  CHECK(bound.from_simulation);
  // ||e(t)|| e^t = sqrt(1 + t^2), maximal at the horizon.
  CHECK(bound.value == doctest::Approx(1.01 * std::sqrt(101.0)).epsilon(1e-6));
}

TEST_CASE("error dynamics stay below the modal bound") {
  Rng rng(22);
  int designs = 0;
  for (int trial = 0; trial < 40 && designs < 15; ++trial) {
    const Eigen::Index d = 2 + trial % 2;
    std::vector<ComplexMatrix> obs;
    for (Eigen::Index k = 0; k < d; ++k) obs.push_back(random_hermitian(rng, d));
    const auto vs = build_vectorized(QuantumSystem(random_hermitian(rng, d), obs));
    ObserverDesign design;
    try {
      design = default_gain(vs);
    } catch (const UnstableDesign&) {
      continue;
    }
    if (design.eigvec_condition > kDefectiveCondition) continue;
    ++designs;
    const ComplexVector e0 = random_gaussian(rng, d * d, 1);
    const double m = amplitude_bound(design, e0.norm()).value;
    for (int k = 0; k < 100; ++k) {
      const double t = 0.2 * k;
      const double err = (expm(design.error_matrix * t) * e0).norm();
      CHECK(err <= m * std::exp(-design.sigma * t) + 1e-9);
    }
  }
  CHECK(designs > 5);
}

TEST_CASE("observer_rhs") {
  const auto sys = two_dim();
  const auto vs = build_vectorized(sys);
  const auto design = default_gain(vs);
  const auto rho = DensityOperator::diagonal({0.25, 0.75});
  const ComplexVector x = vec(rho.matrix());
  const RealVector y = output(sys, rho);

  CHECK((observer_rhs(vs, design, x, y) - vs.a_matrix * x).norm() < 1e-15);

  ObserverDesign zero = design;
  zero.gain.setZero();
  const ComplexVector x_hat = vec(DensityOperator::diagonal({0.0, 1.0}).matrix());
  CHECK((observer_rhs(vs, zero, x_hat, y) - vs.a_matrix * x_hat).norm() == 0.0);

  // Innovation y - C x_hat = (0.25, -0.25); K = C^dagger puts it on vec entries 0 and 3.
  ComplexVector correction = ComplexVector::Zero(4);
  correction(0) = 0.25;
  correction(3) = -0.25;
  const ComplexVector expected = vs.a_matrix * x_hat + correction;
  CHECK((observer_rhs(vs, design, x_hat, y) - expected).norm() < 1e-15);

  CHECK_THROWS_AS(observer_rhs(vs, design, ComplexVector::Zero(3), y), DimensionError);
}
