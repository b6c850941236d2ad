#include "lieharm/geometry.hpp"

#include "lieharm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lieharm {

Eigen::VectorXd ConnectionTable::covariant(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int a = 0; a < dim(); ++a)
    if (x(a) != 0.0) out += x(a) * (nabla[a] * y);
  return out;
}

Eigen::VectorXd ConnectionTable::mean_connection() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int a = 0; a < dim(); ++a) out += nabla[a].col(a);
  return out;
}

double orthonormality_residual(const LieAlgebra& A, const Eigen::MatrixXd& onb) {
  if (onb.rows() != A.dim()) throw InputError("frame vectors have the wrong length");
  const Eigen::MatrixXd g = onb.transpose() * A.gram() * onb;
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

ConnectionTable koszul(const LieAlgebra& A, const Eigen::MatrixXd& onb) {
  const int n = A.dim();
  if (onb.rows() != n || onb.cols() != n) throw InputError("koszul: frame must be square");
  if (orthonormality_residual(A, onb) > 1e-10)
    throw PreconditionError("koszul: frame is not orthonormal");

  ConnectionTable T;
  T.frame = onb;
  const Eigen::MatrixXd to_frame = onb.transpose() * A.gram();
  T.structure.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) T.structure[a] = to_frame * ad_matrix(A, onb.col(a)) * onb;

  // C(a,b,c) = <[X_a,X_b],X_c>
  auto C = [&](int a, int b, int c) { return T.structure[a](c, b); };
  T.nabla.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) T.nabla[a](c, b) = 0.5 * (C(a, b, c) - C(b, c, a) + C(c, a, b));
  return T;
}

double torsion_residual(const ConnectionTable& T) {
  double worst = 0.0;
  for (int a = 0; a < T.dim(); ++a)
    for (int b = 0; b < T.dim(); ++b)
      worst = std::max(worst,
                       (T.nabla[a].col(b) - T.nabla[b].col(a) - T.structure[a].col(b)).cwiseAbs().maxCoeff());
  return worst;
}

double metric_residual(const ConnectionTable& T) {
  double worst = 0.0;
  for (const auto& m : T.nabla) worst = std::max(worst, (m + m.transpose()).cwiseAbs().maxCoeff());
  return worst;
}

Eigen::VectorXd gl_connection_term(const MatrixRealization& R, const Eigen::VectorXd& X) {
  if (R.trace_metric_residual() > 1e-10)
    throw PreconditionError("gl_connection_term: inner product is not the restriction of trace(XY^T)");
  const Eigen::MatrixXd M = R.to_matrix(X);
  const Eigen::MatrixXd K = M * M.transpose() - M.transpose() * M;
  const int d = R.algebra().dim();
  Eigen::VectorXd b(d);
  for (int i = 0; i < d; ++i) b(i) = (R.rep()[i].array() * K.array()).sum();
  return R.algebra().gram().llt().solve(b);
}

CurvatureTensor::CurvatureTensor(const ConnectionTable& T) : n_(T.dim()) {
  ops_.resize(static_cast<std::size_t>(n_ * n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      Eigen::MatrixXd r = T.nabla[a] * T.nabla[b] - T.nabla[b] * T.nabla[a];
      const Eigen::VectorXd ab = T.structure[a].col(b);
      for (int e = 0; e < n_; ++e)
        if (ab(e) != 0.0) r -= ab(e) * T.nabla[e];
      ops_[a * n_ + b] = std::move(r);
    }
}

Eigen::MatrixXd CurvatureTensor::op(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n_, n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      const double w = x(a) * y(b);
      if (w != 0.0) r += w * ops_[a * n_ + b];
    }
  return r;
}

double CurvatureTensor::symmetry_residual() const {
  double worst = 0.0;
  const auto& R = *this;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) {
          const double r = R(a, b, c, d);
          worst = std::max({worst, std::abs(r + R(b, a, c, d)), std::abs(r + R(a, b, d, c)),
                            std::abs(r - R(c, d, a, b))});
        }
  return worst;
}

double CurvatureTensor::bianchi_residual() const {
  double worst = 0.0;
  const auto& R = *this;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d)
          worst = std::max(worst, std::abs(R(a, b, c, d) + R(b, c, a, d) + R(c, a, b, d)));
  return worst;
}

double sectional(const CurvatureTensor& R, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != R.dim() || y.size() != R.dim()) throw InputError("sectional: wrong vector length");
  const double xx = x.squaredNorm(), yy = y.squaredNorm(), xy = x.dot(y);
  const double area = xx * yy - xy * xy;
  if (!(area > 1e-12 * xx * yy) || xx == 0.0 || yy == 0.0)
    throw DomainError("sectional: vectors are linearly dependent");
  return x.dot(R.op(x, y) * y) / area;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> random_plane(Rng& rng, int n) {
  if (n < 2) throw InputError("random_plane: dimension must be at least 2");
  for (;;) {
    Eigen::MatrixXd pair(n, 2);
    pair.col(0) = rng.normal_vector(n);
    pair.col(1) = rng.normal_vector(n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pair);
    const auto& sv = svd.singularValues();
    if (sv(1) <= 0.0 || sv(0) / sv(1) > 1e6) continue;
    Eigen::VectorXd x = pair.col(0).normalized();
    Eigen::VectorXd y = pair.col(1) - x.dot(pair.col(1)) * x;
    y.normalize();
    return {x, y};
  }
}

CurvatureSurvey survey_sectional(const CurvatureTensor& R, int planes, std::uint64_t seed, double tol) {
  if (planes < 1) throw InputError("survey_sectional: need at least one plane");
  Rng rng(seed);
  CurvatureSurvey s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int k = 0; k < planes; ++k) {
    const auto [x, y] = random_plane(rng, R.dim());
    const double K = sectional(R, x, y);
    s.min = std::min(s.min, K);
    s.max = std::max(s.max, K);
    sum += K;
  }
  s.planes = planes;
  s.mean = sum / planes;
  s.constant = s.max - s.min < tol;
  return s;
}

}  // namespace lieharm
