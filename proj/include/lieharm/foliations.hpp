#pragma once

#include "lieharm/geometry.hpp"
#include "lieharm/lie_algebra.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace lieharm {

/// Left-invariant orthogonal splitting g = V + H.  Both parts are stored as
/// bases orthonormal for the algebra's Gram matrix.
class DistributionSpec {
 public:
  DistributionSpec(LieAlgebra A, const Subspace& vertical);

  const LieAlgebra& algebra() const { return A_; }
  const Subspace& vertical() const { return V_; }
  const Subspace& horizontal() const { return H_; }

  /// max over vertical pairs of the horizontal part of [U, W].
  double involutivity_residual() const;

 private:
  LieAlgebra A_;
  Subspace V_;
  Subspace H_;
};

/// Components of the second fundamental forms in the orthonormal bases:
/// vertical[k](i, j) = <B^V(U_i, U_j), X_k>, horizontal[m](i, j) = <B^H(X_i, X_j), U_m>.
struct SecondForms {
  std::vector<Eigen::MatrixXd> vertical;
  std::vector<Eigen::MatrixXd> horizontal;
};

SecondForms second_forms(const DistributionSpec& D, const ConnectionTable& T);
inline SecondForms second_forms(const DistributionSpec& D) { return second_forms(D, koszul(D.algebra())); }

struct FoliationFlags {
  bool totally_geodesic = false;
  bool conformal = false;
  bool riemannian = false;
  double geodesic_residual = 0.0;   // |B^V|
  double conformal_residual = 0.0;  // |B^H - trace part|
  std::optional<Eigen::VectorXd> conformal_vector;  // declared coordinates, when conformal
};

/// Flags with threshold tol (default 1e-9) on the residuals.
FoliationFlags classify(const DistributionSpec& D, const ConnectionTable& T, double tol = 1e-9);
inline FoliationFlags classify(const DistributionSpec& D, double tol = 1e-9) {
  return classify(D, koszul(D.algebra()), tol);
}

/// Combined residual of "conformal foliation by geodesics" for the line through v.
double conformal_geodesic_residual(const LieAlgebra& A, const ConnectionTable& T,
                                   const Eigen::VectorXd& v);

struct ScanHit {
  Eigen::VectorXd direction;  // unit, declared coordinates, first nonzero frame coefficient positive
  int grid_index = 0;
  double residual = 0.0;
  FoliationFlags flags;
  double alpha = 0.0;  // <[V,X],X>
  double beta = 0.0;   // <[V,X],Y>, (V, X, Y) positively oriented
  double adjoint_residual = 0.0;  // |<[V,.],.>|_H - (alpha I + beta J)|
  CurvatureSurvey curvature;
};

struct ScanResult {
  int grid_points = 0;
  double min_residual = 0.0;  // over the refined candidates
  std::vector<ScanHit> hits;
  std::string note;
};

/// Scans unit vertical directions on a Fibonacci sphere of grid^2 points,
/// refines well separated low-residual seeds by Gauss-Newton on the sphere, and reports
/// the conformal-geodesic hits (residual < hit_tol) merged to 1e-3 radians.
ScanResult scan_3d(const LieAlgebra& A, int grid = 200, double hit_tol = 1e-9,
                   std::uint64_t curvature_seed = 1);

struct Certificate {
  double alpha = 0.0;
  double beta = 0.0;
  double classify_residual = 0.0;
  double adjoint_residual = 0.0;
  double horizontal_bracket = 0.0;  // |[X, Y]|
  double derived_span_residual = 0.0;  // span{X,Y} vs [g,g]
  CurvatureSurvey curvature;
  double curvature_value_residual = 0.0;  // max |K + alpha^2| over the survey
  bool pass = false;
};

/// Checks the hypotheses (dimension 3, centerless,
/// solvable, V conformal + geodesic) and throws PreconditionError listing the
/// ones that fail; then certifies the conclusions.
Certificate constant_curvature_certificate(const LieAlgebra& A, const Eigen::VectorXd& v,
                                           std::uint64_t seed = 1);

}  // namespace lieharm
