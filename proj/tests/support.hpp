#pragma once

#include "lieharm/random.hpp"

#include <Eigen/Dense>

namespace support {

// Symmetric positive definite with eigenvalues in [0.5, 2].
inline Eigen::MatrixXd random_spd(lieharm::Rng& rng, int n) {
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = rng.normal();
  const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(M).householderQ();
  Eigen::VectorXd d(n);
  for (int k = 0; k < n; ++k) d(k) = rng.uniform(0.5, 2.0);
  return Q * d.asDiagonal() * Q.transpose();
}

inline Eigen::MatrixXd random_orthogonal(lieharm::Rng& rng, int n) {
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = rng.normal();
  return Eigen::HouseholderQR<Eigen::MatrixXd>(M).householderQ();
}

}  // namespace support
