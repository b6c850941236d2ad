#pragma once
// Reference computations used by the tests.  None of them go through the
// jet, connection-table or curvature code they are compared against.

#include "lieharm/lie_algebra.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <functional>

namespace oracle {

// kappa(x_ij, x_kl) on N_n: delta_jl * sum_{max(i,k) <= r < l} x_ir x_kr (0-based here).
inline double unipotent_kappa(const Eigen::MatrixXd& p, int i, int j, int k, int l) {
  if (j != l) return 0.0;
  double s = 0.0;
  for (int r = std::max(i, k); r < l; ++r) s += p(i, r) * p(k, r);
  return s;
}

// Columns: the Gram-Schmidt basis of the declared coordinates, computed the textbook way.
inline Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& G) {
  const int n = static_cast<int>(G.rows());
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < k; ++j) Q.col(k) -= (Q.col(j).dot(G * Q.col(k))) * Q.col(j);
    Q.col(k) /= std::sqrt(Q.col(k).dot(G * Q.col(k)));
  }
  return Q;
}

inline Eigen::VectorXd br(const lieharm::LieAlgebra& A, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(A.dim());
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j)
      for (int k = 0; k < A.dim(); ++k) out(k) += x(i) * y(j) * A.constant(i, j, k);
  return out;
}

inline double ip(const lieharm::LieAlgebra& A, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return x.dot(A.gram() * y);
}

// sum_a nabla_{X_a} X_a = sum_b trace(ad X_b) X_b over an orthonormal basis
// (from <nabla_X X, Z> = <[Z, X], X>).  Declared coordinates.
inline Eigen::VectorXd mean_curvature_field(const lieharm::LieAlgebra& A) {
  const Eigen::MatrixXd Q = gram_schmidt(A.gram());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(A.dim());
  for (int b = 0; b < A.dim(); ++b) {
    double tr = 0.0;
    for (int i = 0; i < A.dim(); ++i) tr += Q(i, b) * A.ad(i).trace();
    out += tr * Q.col(b);
  }
  return out;
}

// Sectional curvature of a left-invariant metric from brackets only:
// K = -3/4|[x,y]|^2 - 1/2<[x,[x,y]],y> - 1/2<[y,[y,x]],x> + |U(x,y)|^2 - <U(x,x),U(y,y)>,
// 2<U(x,y),z> = <[z,x],y> + <x,[z,y]>, x and y orthonormal.
inline double sectional_from_brackets(const lieharm::LieAlgebra& A, Eigen::VectorXd x, Eigen::VectorXd y) {
  x /= std::sqrt(ip(A, x, x));
  y -= ip(A, x, y) * x;
  y /= std::sqrt(ip(A, y, y));
  const Eigen::MatrixXd Q = gram_schmidt(A.gram());
  auto U = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(A.dim());
    for (int c = 0; c < A.dim(); ++c) {
      const Eigen::VectorXd z = Q.col(c);
      u += 0.5 * (ip(A, br(A, z, a), b) + ip(A, a, br(A, z, b))) * z;
    }
    return u;
  };
  const Eigen::VectorXd xy = br(A, x, y);
  const Eigen::VectorXd uxy = U(x, y);
  return -0.75 * ip(A, xy, xy) - 0.5 * ip(A, br(A, x, xy), y) - 0.5 * ip(A, br(A, y, br(A, y, x)), x) +
         ip(A, uxy, uxy) - ip(A, U(x, x), U(y, y));
}

// Central differences of f(s) with step h: first and second derivatives.
inline std::pair<double, double> central(const std::function<double(double)>& f, double h) {
  const double fp = f(h), f0 = f(0.0), fm = f(-h);
  return {(fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)};
}

// Reference matrix exponential.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& X) { return X.exp(); }

}  // namespace oracle
