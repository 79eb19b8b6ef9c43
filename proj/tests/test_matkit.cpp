#include <cmath>

#include "doctest.h"
#include "qso/errors.hpp"
#include "qso/matkit.hpp"
#include "qso/model.hpp"
#include "qso/random.hpp"

using namespace qso;

namespace {
const Complex I{0.0, 1.0};

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

TEST_CASE("hermitize averages with the adjoint") {
  CHECK(hermitize(mat2(1, I, 0, 1)).isApprox(mat2(1, I / 2.0, -I / 2.0, 1)));
  CHECK(hermitize(mat2(0, 2, 0, 0)) == mat2(0, 1, 1, 0));

  Rng rng(1);
  const ComplexMatrix h = random_hermitian(rng, 4);
  CHECK(hermitize(h) == h);
  const ComplexMatrix g = random_gaussian(rng, 3, 3);
  CHECK(hermitize(hermitize(g)) == hermitize(g));

  CHECK_THROWS_AS(hermitize(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("commutator") {
  CHECK(commutator(pauli(1), pauli(2)).isApprox(2.0 * I * pauli(3)));
  Rng rng(2);
  const ComplexMatrix h = random_hermitian(rng, 3);
  CHECK(commutator(h, h).norm() == 0.0);
  CHECK(commutator(ComplexMatrix::Identity(3, 3), h).norm() < 1e-15);
  CHECK_THROWS_AS(commutator(h, pauli(1)), DimensionError);
}

TEST_CASE("kron") {
  const ComplexMatrix h = pauli_combination(1.5, 1.0, 0.0, 0.5);
  ComplexMatrix block = ComplexMatrix::Zero(4, 4);
  block.topLeftCorner(2, 2) = h;
  block.bottomRightCorner(2, 2) = h;
  CHECK(kron(ComplexMatrix::Identity(2, 2), h) == block);

  CHECK(kron(h, ComplexMatrix::Identity(1, 1)) == h);

  ComplexMatrix anti = ComplexMatrix::Zero(4, 4);
  anti.topRightCorner(2, 2) = ComplexMatrix::Identity(2, 2);
  anti.bottomLeftCorner(2, 2) = ComplexMatrix::Identity(2, 2);
  CHECK(kron(pauli(1), ComplexMatrix::Identity(2, 2)) == anti);

  Rng rng(3);
  const ComplexMatrix a = random_gaussian(rng, 2, 3);
  const ComplexMatrix b = random_gaussian(rng, 4, 1);
  CHECK(kron(a, b).rows() == 8);
  CHECK(kron(a, b).cols() == 3);
}

TEST_CASE("vec stacks columns") {
  ComplexMatrix m(2, 2);
  m << 1, 2, 3, 4;
  ComplexVector expected(4);
  expected << 1, 3, 2, 4;
  CHECK(vec(m) == expected);
  CHECK(unvec(vec(m), 2) == m);
  CHECK(unvec(vec(m)) == m);
  CHECK_THROWS_AS(unvec(ComplexVector::Zero(5)), DimensionError);
  CHECK_THROWS_AS(unvec(ComplexVector::Zero(4), 3), DimensionError);
}

TEST_CASE("vec satisfies vec(XRY) = (Y^T kron X) vec(R)") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix x = random_gaussian(rng, 3, 3);
    const ComplexMatrix r = random_gaussian(rng, 3, 3);
    const ComplexMatrix y = random_gaussian(rng, 3, 3);
    CHECK((vec(x * r * y) - kron(y.transpose(), x) * vec(r)).norm() < 1e-12 * (x.norm() * r.norm() * y.norm()));
  }
}

TEST_CASE("vec is an isometry") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix m = random_gaussian(rng, 4, 4);
    CHECK(std::abs(vec(m).norm() - hs_norm(m)) < 1e-12);
    CHECK(unvec(vec(m), 4) == m);
  }
}

TEST_CASE("Hilbert-Schmidt inner product and norm") {
  CHECK(hs_norm(ComplexMatrix::Identity(3, 3)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(std::abs(hs_inner(pauli(1), pauli(2))) == 0.0);
  CHECK(hs_inner(pauli(3), pauli(3)).real() == doctest::Approx(2.0));

  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
  a.diagonal() << 0.25, 0.75;
  b.diagonal() << 0.0, 1.0;
  CHECK(hs_norm(a - b) == doctest::Approx(std::sqrt(0.0625 + 0.0625)).epsilon(1e-14));
  CHECK(hs_norm(a - b) == doctest::Approx(0.35355339059327373));

  CHECK_THROWS_AS(hs_inner(a, ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("eig_hermitian") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << 0.25, 0.75;
  auto e = eig_hermitian(d);
  CHECK(e.values(0) == doctest::Approx(0.75));
  CHECK(e.values(1) == doctest::Approx(0.25));

  e = eig_hermitian(pauli(1));
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(-1.0));

  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 1 + trial % 6);
    const auto sys = eig_hermitian(h);
    const ComplexMatrix recon = sys.vectors * sys.values.cast<Complex>().asDiagonal() * sys.vectors.adjoint();
    CHECK((recon - h).norm() < 1e-10 * h.norm());
    CHECK((sys.vectors.adjoint() * sys.vectors - ComplexMatrix::Identity(h.rows(), h.rows())).norm() < 1e-10);
    for (Eigen::Index k = 1; k < sys.values.size(); ++k) CHECK(sys.values(k - 1) >= sys.values(k));
  }

  CHECK_THROWS_AS(eig_hermitian(mat2(0, 1, 0, 0)), DomainError);
}

TEST_CASE("eig_general") {
  // Upper-triangular: eigenvalues are the diagonal.
  ComplexMatrix t(3, 3);
  t << 1.0, 2.0, 3.0, 0.0, Complex(0, 2), 5.0, 0.0, 0.0, -4.0;
  auto values = eig_general(t);
  std::vector<Complex> expected{1.0, Complex(0, 2), -4.0};
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& v : values) found = found || std::abs(v - e) < 1e-12;
    CHECK(found);
  }

  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix m = random_gaussian(rng, 5, 5);
    const auto ev = eig_general(m);
    Complex sum = 0.0;
    for (const auto& v : ev) sum += v;
    CHECK(std::abs(sum - m.trace()) < 1e-9);

    // Same multiset for the transpose.
    auto et = eig_general(m.transpose());
    for (const auto& v : ev) {
      double nearest = INFINITY;
      for (const auto& w : et) nearest = std::min(nearest, std::abs(v - w));
      CHECK(nearest < 1e-9);
    }
  }
  CHECK_THROWS_AS(eig_general(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("expm and logm_posdef") {
  CHECK(expm(ComplexMatrix::Zero(3, 3)) == ComplexMatrix::Identity(3, 3));

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << 0.25, 0.75;
  ComplexMatrix log_d = ComplexMatrix::Zero(2, 2);
  log_d.diagonal() << std::log(0.25), std::log(0.75);
  CHECK((logm_posdef(d) - log_d).norm() < 1e-14);

  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 4);
    const ComplexMatrix u = expm(-I * 1.7 * h);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm() < 1e-10);

    ComplexMatrix a = random_gaussian(rng, 4, 4);
    a *= (10.0 * (trial + 1) / 30.0) / a.norm();
    CHECK((expm(a) * expm(-a) - ComplexMatrix::Identity(4, 4)).norm() < 1e-9);

    const ComplexMatrix p = random_density(rng, 3).matrix();
    CHECK((expm(logm_posdef(p)) - p).norm() < 1e-10);
  }

  ComplexMatrix singular = ComplexMatrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(logm_posdef(singular), DomainError);
  CHECK_THROWS_AS(logm_posdef(pauli(3)), DomainError);
}

TEST_CASE("numerical_rank") {
  CHECK(numerical_rank(ComplexMatrix::Zero(4, 4)) == 0);
  CHECK(numerical_rank(ComplexMatrix::Identity(4, 4)) == 4);

  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix u1 = random_gaussian(rng, 4, 1), v1 = random_gaussian(rng, 4, 1);
    const ComplexMatrix u2 = random_gaussian(rng, 4, 1), v2 = random_gaussian(rng, 4, 1);
    CHECK(numerical_rank(u1 * v1.adjoint() + u2 * v2.adjoint()) == 2);
  }
  CHECK(condition_number(ComplexMatrix::Identity(3, 3)) == doctest::Approx(1.0));
}
