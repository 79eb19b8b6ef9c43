#include "qso/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qso::oracle {

namespace {

Eigen::Matrix2cd bloch_density(const Eigen::Vector3d& r) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd rho;
  rho << 1.0 + r(2), r(0) - i * r(1),
         r(0) + i * r(1), 1.0 - r(2);
  return rho / 2.0;
}

Eigen::Vector3d clamp_to_ball(Eigen::Vector3d r) {
  const double n = r.norm();
  return n > 1.0 ? Eigen::Vector3d(r / n) : r;
}

}  // namespace

Eigen::Matrix2cd bloch_grid_projection(const Eigen::Matrix2cd& h, double coarse, double finest) {
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  double best_cost = std::numeric_limits<double>::infinity();

  auto scan = [&](const Eigen::Vector3d& center, double half_width, double spacing) {
    const int n = static_cast<int>(std::ceil(half_width / spacing));
    Eigen::Vector3d incumbent = best;
    for (int a = -n; a <= n; ++a) {
      for (int b = -n; b <= n; ++b) {
        for (int c = -n; c <= n; ++c) {
          const Eigen::Vector3d r =
              clamp_to_ball(center + spacing * Eigen::Vector3d(a, b, c));
          const double cost = (h - bloch_density(r)).squaredNorm();
          if (cost < best_cost) {
            best_cost = cost;
            incumbent = r;
          }
        }
      }
    }
    best = incumbent;
  };

  double spacing = coarse;
  scan(Eigen::Vector3d::Zero(), 1.0, spacing);
  while (spacing > finest) {
    const double window = 1.5 * spacing;
    spacing /= 5.0;
    scan(best, window, spacing);
  }
  return bloch_density(best);
}

Eigen::VectorXd simplex_grid_projection(const Eigen::VectorXd& v, double finest) {
  const auto n = v.size();
  if (n != 2 && n != 3) throw std::invalid_argument("simplex_grid_projection: only 2 or 3 entries");

  // Free coordinates p_0..p_{n-2}; the last entry is 1 - sum.
  auto complete = [n](double p0, double p1) {
    Eigen::VectorXd p(n);
    if (n == 2) {
      p << p0, 1.0 - p0;
    } else {
      p << p0, p1, 1.0 - p0 - p1;
    }
    return p;
  };
  auto feasible = [](const Eigen::VectorXd& p) { return p.minCoeff() >= 0.0; };

  double best0 = 1.0 / static_cast<double>(n);
  double best1 = n == 3 ? 1.0 / 3.0 : 0.0;
  double best_cost = (v - complete(best0, best1)).squaredNorm();

  double spacing = 0.01;
  double c0 = 0.5, c1 = 0.5, half = 0.5;
  while (true) {
    const int steps = static_cast<int>(std::ceil(half / spacing));
    const int steps1 = n == 3 ? steps : 0;
    double next0 = best0, next1 = best1;
    for (int a = -steps; a <= steps; ++a) {
      for (int b = -steps1; b <= steps1; ++b) {
        const double p0 = std::clamp(c0 + a * spacing, 0.0, 1.0);
        const double p1 = n == 3 ? std::clamp(c1 + b * spacing, 0.0, 1.0) : 0.0;
        const Eigen::VectorXd p = complete(p0, p1);
        if (!feasible(p)) continue;
        const double cost = (v - p).squaredNorm();
        if (cost < best_cost) {
          best_cost = cost;
          next0 = p0;
          next1 = p1;
        }
      }
    }
    best0 = next0;
    best1 = next1;
    if (spacing <= finest) break;
    c0 = best0;
    c1 = best1;
    half = 1.5 * spacing;
    spacing /= 5.0;
  }
  return complete(best0, best1);
}

}  // namespace qso::oracle
