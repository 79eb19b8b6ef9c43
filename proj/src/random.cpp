#include "qso/random.hpp"

namespace qso {

ComplexMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index d) {
  return hermitize(random_gaussian(rng, d, d));
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index d) {
  return expm(Complex(0.0, -1.0) * random_hermitian(rng, d));
}

DensityOperator random_density(Rng& rng, Eigen::Index d, Eigen::Index rank) {
  const ComplexMatrix g = random_gaussian(rng, d, rank);
  const ComplexMatrix rho = g * g.adjoint();
  return DensityOperator(rho / rho.trace().real());
}

DensityOperator random_density(Rng& rng, Eigen::Index d) { return random_density(rng, d, d); }

}  // namespace qso
