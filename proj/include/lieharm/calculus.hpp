#pragma once

#include "lieharm/field.hpp"
#include "lieharm/geometry.hpp"
#include "lieharm/matrix_group.hpp"

#include <complex>
#include <string>
#include <vector>

namespace lieharm {

/// X(phi)(p) and X^2(phi)(p) along s -> p exp(sX).
template <typename Scalar>
struct Derivs {
  Scalar first{};
  Scalar second{};
};

/// A matrix group with a left-invariant metric and a chosen orthonormal frame:
/// the data needed to evaluate tau and kappa.
class LeftInvariantFrame {
 public:
  /// Uses the Cholesky frame of the algebra's Gram matrix.
  explicit LeftInvariantFrame(MatrixRealization R);
  /// Uses the given orthonormal frame (columns, declared coordinates).
  LeftInvariantFrame(MatrixRealization R, Eigen::MatrixXd onb);

  const MatrixRealization& realization() const { return R_; }
  const Eigen::MatrixXd& onb() const { return onb_; }
  const std::vector<Eigen::MatrixXd>& onb_matrices() const { return onb_mats_; }
  const ConnectionTable& connection() const { return table_; }
  /// sum_a nabla_{X_a} X_a as a matrix in the realization
  const Eigen::MatrixXd& mean_connection_matrix() const { return mean_conn_; }
  int dim() const { return static_cast<int>(onb_.cols()); }

 private:
  MatrixRealization R_;
  Eigen::MatrixXd onb_;
  std::vector<Eigen::MatrixXd> onb_mats_;
  ConnectionTable table_;
  Eigen::MatrixXd mean_conn_;
};

/// Exact derivatives from the 2-jet of the curve; X in declared coordinates.
Derivs<double> derivs(const ScalarField& phi, const MatrixRealization& R, const GroupPoint& p,
                      const Eigen::VectorXd& X);
Derivs<std::complex<double>> derivs(const ComplexField& phi, const MatrixRealization& R,
                                    const GroupPoint& p, const Eigen::VectorXd& X);

/// Central differences of s -> phi(p exp_matrix(sX)) with step h.
Derivs<double> fd_check(const ScalarField& phi, const MatrixRealization& R, const GroupPoint& p,
                        const Eigen::VectorXd& X, double h = 1e-4);

/// kappa(phi, psi) = sum_{X in frame} X(phi) X(psi), complex bilinear.
double kappa(const ScalarField& phi, const ScalarField& psi, const LeftInvariantFrame& F,
             const GroupPoint& p);
std::complex<double> kappa(const ComplexField& phi, const ComplexField& psi,
                           const LeftInvariantFrame& F, const GroupPoint& p);

/// tau(phi) = sum_{X in frame} X^2(phi) - (nabla_X X)(phi).
double laplacian(const ScalarField& phi, const LeftInvariantFrame& F, const GroupPoint& p);
std::complex<double> laplacian(const ComplexField& phi, const LeftInvariantFrame& F,
                               const GroupPoint& p);

struct FamilyReport {
  int fields = 0;
  int points = 0;
  double tol = 0.0;
  std::vector<double> max_tau;   // per field
  Eigen::MatrixXd max_kappa;     // per pair, including kappa(phi, phi)
  double worst_tau = 0.0;
  double worst_kappa = 0.0;
  bool pass = false;
  std::vector<std::string> warnings;
};

/// Orthogonal harmonic family check: |tau(phi)| < tol and |kappa(phi, psi)| < tol
/// for all members and pairs at every point.  An empty point list passes with a warning.
FamilyReport verify_family(const std::vector<ComplexField>& family, const LeftInvariantFrame& F,
                           const std::vector<GroupPoint>& points, double tol);

}  // namespace lieharm
