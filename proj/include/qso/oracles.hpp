#pragma once

// Brute-force reference computations used to cross-check the library.
// Nothing here calls into the eigen-decomposition or projection code paths.

#include <Eigen/Dense>

namespace qso::oracle {

/// HS-nearest 2x2 density to the Hermitian matrix `h`, found by
/// hierarchical grid search over Bloch vectors r (|r| <= 1), rho = (I + r.sigma)/2.
/// The first pass scans the cube [-1,1]^3 at spacing `coarse`; each later
/// pass rescans a window around the incumbent at one fifth of the spacing,
/// stopping once the spacing is below `finest`.
Eigen::Matrix2cd bloch_grid_projection(const Eigen::Matrix2cd& h, double coarse = 0.05,
                                       double finest = 1e-6);

/// Euclidean projection of v (2 or 3 entries) onto the probability simplex by
/// hierarchical grid search over the simplex coordinates.
Eigen::VectorXd simplex_grid_projection(const Eigen::VectorXd& v, double finest = 1e-9);

}  // namespace qso::oracle
