#pragma once

#include <Eigen/Dense>

#include <vector>

namespace lieharm {

/// Finite-dimensional real Lie algebra with an inner product.
///
/// Structure constants are stored as the adjoint matrices of the declared
/// basis: column j of ad(i) holds the coordinates of [X_i, X_j], so that
/// c[i][j][k] = ad(i)(k, j).  The inner product is given by its Gram matrix
/// in the same basis.  Instances are immutable once constructed.
///
/// The constructor enforces shape, finiteness, antisymmetry and positive
/// definiteness of the Gram matrix.  The Jacobi identity is *not* enforced so
/// that malformed inputs can still be inspected; see jacobi_residual().
class LieAlgebra {
 public:
  LieAlgebra(std::vector<Eigen::MatrixXd> ad_basis, Eigen::MatrixXd gram);

  /// Abelian algebra of dimension n with identity Gram matrix.
  static LieAlgebra abelian(int n);

  /// Builds from a list of brackets [X_i, X_j] = coeffs (i < j); the others are
  /// filled in by antisymmetry.
  struct BracketEntry {
    int i;
    int j;
    Eigen::VectorXd coeffs;
  };
  static LieAlgebra from_brackets(int dim, const std::vector<BracketEntry>& brackets,
                                  Eigen::MatrixXd gram);

  int dim() const { return static_cast<int>(ad_.size()); }
  double constant(int i, int j, int k) const { return ad_[i](k, j); }
  const Eigen::MatrixXd& ad(int i) const { return ad_[i]; }
  const std::vector<Eigen::MatrixXd>& ad_basis() const { return ad_; }
  const Eigen::MatrixXd& gram() const { return gram_; }

  /// Largest absolute structure constant.
  double max_constant() const;

  /// Columns form a basis orthonormal for gram(), obtained from its Cholesky factor.
  const Eigen::MatrixXd& frame() const { return frame_; }
  /// Inverse of frame(): maps declared coordinates to frame coordinates.
  const Eigen::MatrixXd& frame_inverse() const { return frame_inv_; }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(gram_ * y);
  }

  /// Copy of this algebra with the inner product replaced.
  LieAlgebra with_gram(Eigen::MatrixXd gram) const;

 private:
  std::vector<Eigen::MatrixXd> ad_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd frame_;
  Eigen::MatrixXd frame_inv_;
};

/// Linear subspace of R^ambient given by independent basis columns.
struct Subspace {
  int ambient = 0;
  Eigen::MatrixXd basis;  // ambient x dim

  int dim() const { return static_cast<int>(basis.cols()); }

  static Subspace zero(int ambient) { return {ambient, Eigen::MatrixXd(ambient, 0)}; }
  static Subspace whole(int ambient) {
    return {ambient, Eigen::MatrixXd::Identity(ambient, ambient)};
  }
  /// Span of the columns of `vectors`; dependent and negligible columns are dropped.
  static Subspace span(const Eigen::MatrixXd& vectors, double rel_tol = 1e-10);
};

Eigen::VectorXd bracket(const LieAlgebra& A, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Matrix of v -> [z, v] in the declared basis.
Eigen::MatrixXd ad_matrix(const LieAlgebra& A, const Eigen::VectorXd& z);

double ad_trace(const LieAlgebra& A, const Eigen::VectorXd& z);

/// Max over basis triples of |[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]|.
double jacobi_residual(const LieAlgebra& A);

/// span{[s, t] : s in S, t in T}
Subspace bracket_span(const LieAlgebra& A, const Subspace& S, const Subspace& T);
Subspace derived_algebra(const LieAlgebra& A);

/// Both series start with the whole algebra and stop once the dimension repeats.
std::vector<Subspace> derived_series(const LieAlgebra& A);
std::vector<Subspace> lower_central_series(const LieAlgebra& A);

bool is_solvable(const LieAlgebra& A);
bool is_nilpotent(const LieAlgebra& A);
bool is_abelian(const LieAlgebra& A, double tol = 1e-12);

Subspace center(const LieAlgebra& A);

/// Gram-Schmidt with respect to A.gram().  Output k has positive inner product
/// with input k, so an orthonormal input is returned unchanged.
Subspace orthonormalize(const LieAlgebra& A, const Subspace& S);

/// Orthonormal basis (w.r.t. A.gram()) of the orthogonal complement of S.
Subspace orthogonal_complement(const LieAlgebra& A, const Subspace& S);

/// Least-squares distance from v to S, relative to max(1, |v|).
double containment_residual(const Subspace& S, const Eigen::VectorXd& v);
bool contains(const Subspace& S, const Subspace& T, double tol = 1e-10);
bool same_subspace(const Subspace& S, const Subspace& T, double tol = 1e-10);

}  // namespace lieharm
