#pragma once

#include "lieharm/lie_algebra.hpp"
#include "lieharm/matrix_group.hpp"
#include "lieharm/random.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace lieharm {

/// Levi-Civita connection of a left-invariant metric, in an orthonormal frame.
///
/// nabla[a] is the matrix of Y -> nabla_{X_a} Y in frame coordinates, so
/// Gamma[a][b][c] = nabla[a](c, b).  structure[a] is ad(X_a) in the same frame.
struct ConnectionTable {
  Eigen::MatrixXd frame;  // columns: orthonormal basis in declared coordinates
  std::vector<Eigen::MatrixXd> nabla;
  std::vector<Eigen::MatrixXd> structure;

  int dim() const { return static_cast<int>(nabla.size()); }
  double gamma(int a, int b, int c) const { return nabla[a](c, b); }

  /// nabla_x y for x, y in frame coordinates.
  Eigen::VectorXd covariant(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// sum_a nabla_{X_a} X_a in frame coordinates (independent of the frame).
  Eigen::VectorXd mean_connection() const;

  Eigen::VectorXd to_frame(const LieAlgebra& A, const Eigen::VectorXd& declared) const {
    return frame.transpose() * (A.gram() * declared);
  }
  Eigen::VectorXd to_declared(const Eigen::VectorXd& in_frame) const { return frame * in_frame; }
};

/// max |F^T G F - I| for the columns of onb.
double orthonormality_residual(const LieAlgebra& A, const Eigen::MatrixXd& onb);

/// Koszul formula 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>.
/// Throws PreconditionError if onb is not orthonormal to 1e-10.
ConnectionTable koszul(const LieAlgebra& A, const Eigen::MatrixXd& onb);
inline ConnectionTable koszul(const LieAlgebra& A) { return koszul(A, A.frame()); }

/// max |Gamma[a][b][.] - Gamma[b][a][.] - [X_a,X_b]|
double torsion_residual(const ConnectionTable& T);
/// max |Gamma[a][b][c] + Gamma[a][c][b]|
double metric_residual(const ConnectionTable& T);

/// Orthogonal projection of [M, M^T] onto the algebra, M the matrix of X.
/// Requires the inner product to be trace(XY^T); result in declared coordinates.
Eigen::VectorXd gl_connection_term(const MatrixRealization& R, const Eigen::VectorXd& X);

/// R(X_a,X_b) = [nabla_a, nabla_b] - nabla_{[X_a,X_b]} as operators in frame coordinates.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(const ConnectionTable& T);

  int dim() const { return n_; }
  /// <R(X_a,X_b)X_c, X_d>
  double operator()(int a, int b, int c, int d) const { return ops_[a * n_ + b](d, c); }
  /// Operator R(x, y) for frame-coordinate vectors.
  Eigen::MatrixXd op(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Worst violation of R_abcd = -R_bacd = -R_abdc = R_cdab.
  double symmetry_residual() const;
  double bianchi_residual() const;

 private:
  int n_;
  std::vector<Eigen::MatrixXd> ops_;
};

inline CurvatureTensor curvature(const ConnectionTable& T) { return CurvatureTensor(T); }

/// <R(x,y)y,x> / (|x|^2|y|^2 - <x,y>^2), frame coordinates.
/// Throws DomainError for (numerically) dependent x, y.
double sectional(const CurvatureTensor& R, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Orthonormal pair from two Gaussian vectors; pairs with condition number
/// above 1e6 are redrawn.
std::pair<Eigen::VectorXd, Eigen::VectorXd> random_plane(Rng& rng, int n);

struct CurvatureSurvey {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  int planes = 0;
  bool constant = false;  // max - min below the tolerance
};

CurvatureSurvey survey_sectional(const CurvatureTensor& R, int planes, std::uint64_t seed,
                                 double tol = 1e-7);
inline bool is_constant_curvature(const LieAlgebra& A, std::uint64_t seed = 1) {
  return survey_sectional(CurvatureTensor(koszul(A)), 500, seed).constant;
}

}  // namespace lieharm
