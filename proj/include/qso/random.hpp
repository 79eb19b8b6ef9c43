#pragma once

#include <cstdint>
#include <random>

#include "qso/matkit.hpp"
#include "qso/model.hpp"

namespace qso {

using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// Hermitian part of a Gaussian matrix (GUE up to scale).
ComplexMatrix random_hermitian(Rng& rng, Eigen::Index d);
/// exp(-iH) for a random Hermitian H.
ComplexMatrix random_unitary(Rng& rng, Eigen::Index d);
/// G G^dagger / tr for a d x rank Gaussian G; rank = d gives the Hilbert-Schmidt measure.
DensityOperator random_density(Rng& rng, Eigen::Index d, Eigen::Index rank);
DensityOperator random_density(Rng& rng, Eigen::Index d);

}  // namespace qso
