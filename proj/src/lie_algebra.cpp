#include "lieharm/lie_algebra.hpp"

#include "lieharm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lieharm {

namespace {

void require_dim(const LieAlgebra& A, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != A.dim()) {
    throw InputError(std::string(what) + ": expected vector of length " + std::to_string(A.dim()) +
                     ", got " + std::to_string(v.size()));
  }
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<Eigen::MatrixXd> ad_basis, Eigen::MatrixXd gram)
    : ad_(std::move(ad_basis)), gram_(std::move(gram)) {
  const int n = dim();
  if (n < 1) throw InputError("Lie algebra must have positive dimension");
  for (const auto& m : ad_) {
    if (m.rows() != n || m.cols() != n) throw InputError("structure constant array has wrong shape");
    if (!m.allFinite()) throw InputError("structure constants must be finite");
  }
  if (gram_.rows() != n || gram_.cols() != n) throw InputError("gram matrix has wrong shape");
  if (!gram_.allFinite()) throw InputError("gram matrix must be finite");

  const double scale = std::max(1.0, max_constant());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (std::abs(ad_[i](k, j) + ad_[j](k, i)) > 1e-12 * scale)
          throw InputError("structure constants are not antisymmetric at (" + std::to_string(i) +
                           "," + std::to_string(j) + "," + std::to_string(k) + ")");

  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, gram_.norm()))
    throw InputError("gram matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_);
  if (eig.eigenvalues().minCoeff() <= 0.0) throw InputError("gram matrix is not positive definite");

  Eigen::LLT<Eigen::MatrixXd> llt(gram_);
  const Eigen::MatrixXd L = llt.matrixL();
  // F = L^{-T}  =>  F^T G F = I,  F^{-1} = L^T
  frame_inv_ = L.transpose();
  frame_ = L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n));
}

LieAlgebra LieAlgebra::abelian(int n) {
  if (n < 1) throw InputError("abelian: dimension must be positive");
  return LieAlgebra(std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)),
                    Eigen::MatrixXd::Identity(n, n));
}

LieAlgebra LieAlgebra::from_brackets(int dim, const std::vector<BracketEntry>& brackets,
                                     Eigen::MatrixXd gram) {
  if (dim < 1) throw InputError("from_brackets: dimension must be positive");
  std::vector<Eigen::MatrixXd> ad(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (const auto& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.i >= dim || b.j >= dim)
      throw InputError("bracket index out of range");
    if (b.i == b.j) throw InputError("bracket [X_i, X_i] must not be specified");
    if (b.coeffs.size() != dim) throw InputError("bracket coefficient vector has wrong length");
    ad[b.i].col(b.j) = b.coeffs;
    ad[b.j].col(b.i) = -b.coeffs;
  }
  return LieAlgebra(std::move(ad), std::move(gram));
}

double LieAlgebra::max_constant() const {
  double m = 0.0;
  for (const auto& a : ad_) m = std::max(m, a.cwiseAbs().maxCoeff());
  return m;
}

LieAlgebra LieAlgebra::with_gram(Eigen::MatrixXd gram) const { return LieAlgebra(ad_, std::move(gram)); }

Subspace Subspace::span(const Eigen::MatrixXd& vectors, double rel_tol) {
  const int n = static_cast<int>(vectors.rows());
  if (vectors.cols() == 0) return zero(n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++rank;
  return {n, svd.matrixU().leftCols(rank)};
}

Eigen::VectorXd bracket(const LieAlgebra& A, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_dim(A, x, "bracket");
  require_dim(A, y, "bracket");
  return ad_matrix(A, x) * y;
}

Eigen::MatrixXd ad_matrix(const LieAlgebra& A, const Eigen::VectorXd& z) {
  require_dim(A, z, "ad_matrix");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(A.dim(), A.dim());
  for (int i = 0; i < A.dim(); ++i)
    if (z(i) != 0.0) m += z(i) * A.ad(i);
  return m;
}

double ad_trace(const LieAlgebra& A, const Eigen::VectorXd& z) {
  require_dim(A, z, "ad_trace");
  double t = 0.0;
  for (int i = 0; i < A.dim(); ++i) t += z(i) * A.ad(i).trace();
  return t;
}

double jacobi_residual(const LieAlgebra& A) {
  const int n = A.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // [[X_i,X_j],X_k] = -ad(X_k)[X_i,X_j]
        const Eigen::VectorXd r = -A.ad(k) * A.ad(i).col(j) - A.ad(i) * A.ad(j).col(k) -
                                  A.ad(j) * A.ad(k).col(i);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
      }
  return worst;
}

Subspace bracket_span(const LieAlgebra& A, const Subspace& S, const Subspace& T) {
  Eigen::MatrixXd cols(A.dim(), S.dim() * T.dim());
  int c = 0;
  for (int a = 0; a < S.dim(); ++a) {
    const Eigen::MatrixXd adS = ad_matrix(A, S.basis.col(a));
    for (int b = 0; b < T.dim(); ++b) cols.col(c++) = adS * T.basis.col(b);
  }
  return Subspace::span(cols);
}

Subspace derived_algebra(const LieAlgebra& A) {
  const Subspace g = Subspace::whole(A.dim());
  return bracket_span(A, g, g);
}

std::vector<Subspace> derived_series(const LieAlgebra& A) {
  std::vector<Subspace> series{Subspace::whole(A.dim())};
  while (series.back().dim() > 0) {
    Subspace next = bracket_span(A, series.back(), series.back());
    const bool stable = next.dim() == series.back().dim();
    series.push_back(std::move(next));
    if (stable) break;
  }
  return series;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& A) {
  const Subspace g = Subspace::whole(A.dim());
  std::vector<Subspace> series{g};
  while (series.back().dim() > 0) {
    Subspace next = bracket_span(A, g, series.back());
    const bool stable = next.dim() == series.back().dim();
    series.push_back(std::move(next));
    if (stable) break;
  }
  return series;
}

bool is_solvable(const LieAlgebra& A) { return derived_series(A).back().dim() == 0; }
bool is_nilpotent(const LieAlgebra& A) { return lower_central_series(A).back().dim() == 0; }

bool is_abelian(const LieAlgebra& A, double tol) { return A.max_constant() <= tol; }

Subspace center(const LieAlgebra& A) {
  const int n = A.dim();
  // column i: vec(ad(X_i)); x is central iff sum_i x_i ad(X_i) = 0
  Eigen::MatrixXd stacked(n * n, n);
  for (int i = 0; i < n; ++i) stacked.col(i) = A.ad(i).reshaped();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv(0));
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++rank;
  return {n, svd.matrixV().rightCols(n - rank)};
}

Subspace orthonormalize(const LieAlgebra& A, const Subspace& S) {
  if (S.ambient != A.dim()) throw InputError("orthonormalize: subspace lives in the wrong space");
  const Eigen::MatrixXd& G = A.gram();
  Eigen::MatrixXd Q(A.dim(), S.dim());
  for (int k = 0; k < S.dim(); ++k) {
    const Eigen::VectorXd v = S.basis.col(k);
    Eigen::VectorXd q = v;
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < k; ++j) q -= Q.col(j).dot(G * q) * Q.col(j);
    const double norm = std::sqrt(std::max(0.0, q.dot(G * q)));
    if (norm <= 1e-12 * std::max(1.0, std::sqrt(v.dot(G * v))))
      throw InputError("orthonormalize: basis is rank deficient");
    Q.col(k) = q / norm;
  }
  return {A.dim(), Q};
}

Subspace orthogonal_complement(const LieAlgebra& A, const Subspace& S) {
  const int n = A.dim();
  if (S.dim() == 0) return orthonormalize(A, Subspace::whole(n));
  // x is orthogonal to S iff (G S)^T x = 0
  const Eigen::MatrixXd constraints = (A.gram() * S.basis).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv(0));
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++rank;
  return orthonormalize(A, Subspace{n, svd.matrixV().rightCols(n - rank)});
}

double containment_residual(const Subspace& S, const Eigen::VectorXd& v) {
  const double scale = std::max(1.0, v.norm());
  if (S.dim() == 0) return v.norm() / scale;
  const Eigen::VectorXd coeffs = S.basis.colPivHouseholderQr().solve(v);
  return (S.basis * coeffs - v).norm() / scale;
}

bool contains(const Subspace& S, const Subspace& T, double tol) {
  if (S.ambient != T.ambient) return false;
  for (int k = 0; k < T.dim(); ++k)
    if (containment_residual(S, T.basis.col(k)) > tol) return false;
  return true;
}

bool same_subspace(const Subspace& S, const Subspace& T, double tol) {
  return S.dim() == T.dim() && contains(S, T, tol) && contains(T, S, tol);
}

}  // namespace lieharm
