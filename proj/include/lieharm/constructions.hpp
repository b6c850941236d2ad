#pragma once

#include "lieharm/builders.hpp"
#include "lieharm/field.hpp"
#include "lieharm/lie_algebra.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace lieharm {

/// Subspace of C^n on which the symmetric bilinear form sum_k z_k w_k vanishes.
struct IsotropicBasis {
  int ambient = 0;
  std::vector<Eigen::VectorXcd> vectors;

  int dim() const { return static_cast<int>(vectors.size()); }
  /// max |(w_i, w_j)| over all pairs, including i = j.
  double isotropy_residual() const;
  /// Rank over C of the basis vectors.
  int complex_rank() const;
};

/// Symmetric (not Hermitian) pairing sum_k z_k w_k.
std::complex<double> symmetric_pairing(const Eigen::VectorXcd& z, const Eigen::VectorXcd& w);

/// span{e_1 + i e_2, e_3 + i e_4, ...}: floor(n/2) vectors.
IsotropicBasis max_isotropic(int n);

/// Maximal isotropic W built as consecutive pairs u_1 + i u_2, ... in a real
/// orthonormal basis whose last vector is xi/|xi|.  W meets the complex
/// orthogonal complement of xi in floor((n-1)/2) dimensions, the largest
/// possible.  Falls back to max_isotropic for xi = 0.
IsotropicBasis adapted_isotropic(const Eigen::VectorXd& xi);

/// (trace ad_{X_1}, ..., trace ad_{X_n}) for the columns of horizontal_onb.
/// Throws PreconditionError unless the columns are orthonormal and orthogonal to [A,A].
Eigen::VectorXd xi_vector(const LieAlgebra& A, const Eigen::MatrixXd& horizontal_onb);

/// {w in span(W) : (w, xi) = 0}.  The dimension drops by at most one.
IsotropicBasis restrict_to_xi_perp(const IsotropicBasis& W, const Eigen::VectorXcd& xi);

enum class FirstKind { N, H, K, S };

const char* to_string(FirstKind k);

/// Output of the first construction on one of the built-in families.
struct FirstConstruction {
  FirstKind kind;
  int n = 0;
  BuiltGroup group;
  std::vector<ScalarField> phi;       // components of the epimorphism to R^m
  Eigen::MatrixXd horizontal_onb;     // declared coordinates, one column per component
  Eigen::VectorXd xi;
  IsotropicBasis W;
  IsotropicBasis V;
  std::vector<ComplexField> family;   // (Phi, v) for v in V
  double differential_residual = 0.0; // |dPhi_e(horizontal_onb) - I| and dPhi_e on [g,g]
};

/// Builds the group of the given kind and size n, the epimorphism Phi and the
/// family Omega_V.  Throws ConstructionError when V is zero-dimensional.
FirstConstruction first_construction(FirstKind kind, int n);

/// One named root space n_alpha with the values of alpha on the a-basis.
struct RootSpace {
  std::string label;
  Eigen::VectorXd functional;
  Subspace space;
};

/// s = n + a with n = sum of root spaces; beta indexes the distinguished root.
struct RootGradedAlgebra {
  LieAlgebra algebra;
  Subspace a;
  std::vector<RootSpace> roots;
  int beta = 0;
};

struct ConditionRecord {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

/// Per-condition check of the root-graded hypotheses.
std::vector<ConditionRecord> validate_root_graded(const RootGradedAlgebra& G);

struct SecondConstructionReport {
  std::vector<ConditionRecord> hypotheses;
  std::vector<ConditionRecord> checks;  // dilation, minimality (bracket and connection routes)
  double max_dilation_residual = 0.0;
  double max_minimality_residual = 0.0;
  int beta_dim = 0;
  bool hypotheses_ok = false;
  bool pass = false;
};

/// Dilation ||e^{ad V} X||^2 = e^{2 beta(V)} ||X||^2 for each sampled V
/// (coefficients on the a-basis) and X in an n_beta frame, and minimality of
/// the fibre through e.  Checks are skipped when a hypothesis fails.
SecondConstructionReport second_construction_check(const RootGradedAlgebra& G,
                                                   const std::vector<Eigen::VectorXd>& a_samples,
                                                   double dilation_tol = 1e-9,
                                                   double minimality_tol = 1e-10);

/// Root data of a Damek-Ricci algebra from build_damek_ricci: roots "v" (1/2) and "z" (1).
RootGradedAlgebra damek_ricci_root_graded(const BuiltGroup& dr, int dim_v, int dim_z,
                                          const std::string& beta = "v");

/// Root data of build_iwasawa_sl(n): roots e_r - e_s; beta given by its label, e.g. "e1-e2".
RootGradedAlgebra iwasawa_root_graded(const BuiltGroup& iw, int n, const std::string& beta = "e1-e2");

}  // namespace lieharm
