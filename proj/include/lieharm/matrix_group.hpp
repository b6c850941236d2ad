#pragma once

#include "lieharm/error.hpp"
#include "lieharm/lie_algebra.hpp"
#include "lieharm/random.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace lieharm {

/// Matrix exponential e^{tX}.
///
/// When the Taylor series of tX terminates (X nilpotent, e.g. strictly upper
/// triangular) the finite sum is returned.  Otherwise scaling and squaring
/// with a degree-12 Taylor polynomial is used, scaled so that
/// ||tX|| / 2^k <= 1/2.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> exp_matrix(
    const Eigen::MatrixBase<Derived>& X, typename Derived::Scalar t = 1) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (X.rows() != X.cols()) throw InputError("exp_matrix: matrix must be square");
  if (!X.allFinite() || !std::isfinite(t)) throw InputError("exp_matrix: non-finite input");
  const Eigen::Index n = X.rows();
  const Mat A = t * X;

  // terminating series
  {
    Mat sum = Mat::Identity(n, n);
    Mat term = Mat::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
      term = (term * A) / static_cast<Scalar>(k);
      if ((term.array() == Scalar(0)).all()) return sum;
      sum += term;
    }
  }

  const Scalar norm = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Scalar(0.5)) squarings = static_cast<int>(std::ceil(std::log2(norm / Scalar(0.5))));
  const Mat B = A / std::ldexp(Scalar(1), squarings);
  Mat result = Mat::Identity(n, n);
  for (int k = 12; k >= 1; --k) result = Mat::Identity(n, n) + (B * result) / static_cast<Scalar>(k);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// A point of a matrix group.
struct GroupPoint {
  Eigen::MatrixXd matrix;
};

/// Faithful representation: rep[i] is the N x N matrix of basis vector X_i.
class MatrixRealization {
 public:
  MatrixRealization(LieAlgebra algebra, std::vector<Eigen::MatrixXd> rep);

  const LieAlgebra& algebra() const { return algebra_; }
  const std::vector<Eigen::MatrixXd>& rep() const { return rep_; }
  int ambient() const { return static_cast<int>(rep_.front().rows()); }

  /// sum_i x_i rep[i]
  Eigen::MatrixXd to_matrix(const Eigen::VectorXd& x) const;

  /// max_{i,j} |[rep_i, rep_j] - sum_k c[i][j][k] rep_k|
  double homomorphism_residual() const;

  /// max_{i,j} |trace(rep_i rep_j^T) - gram(i,j)|
  double trace_metric_residual() const;

 private:
  LieAlgebra algebra_;
  std::vector<Eigen::MatrixXd> rep_;
};

/// Algebra spanned by the given matrices: structure constants from projected
/// commutators and, unless supplied, gram(i,j) = trace(M_i M_j^T).
/// Throws ConstructionError if the span is not closed under commutators.
MatrixRealization realization_from_matrices(std::vector<Eigen::MatrixXd> matrices,
                                            std::optional<Eigen::MatrixXd> gram = std::nullopt);

/// Deterministic generic points: each is exp(v_1 X_1) ... exp(v_d X_d) with
/// v uniform in [-scale, scale].
std::vector<GroupPoint> sample_points(const MatrixRealization& R, int count, std::uint64_t seed,
                                      double scale);

}  // namespace lieharm
