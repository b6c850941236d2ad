#pragma once

#include "lieharm/lie_algebra.hpp"
#include "lieharm/matrix_group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lieharm {

/// A built-in group: its algebra and, when available, a faithful matrix model.
struct BuiltGroup {
  std::string name;
  LieAlgebra algebra;
  std::optional<MatrixRealization> realization;
  std::vector<std::string> labels;  // one per basis vector
};

/// E_rs with 0-based indices in an N x N matrix.
Eigen::MatrixXd unit_matrix(int N, int r, int s);

/// Upper triangular unipotent matrices; basis E_rs (r < s), row-major order.
BuiltGroup build_N(int n);
/// (2n+1)-dim Heisenberg group inside N_{n+2}; basis X_1..X_n, Y_1..Y_n, Z.
BuiltGroup build_H(int n);
/// (n+1)-dim group inside GL(n+1); basis X, Y_1..Y_n.
BuiltGroup build_K(int n);
/// Identity component of upper triangular matrices; basis D_1..D_n, then E_rs.
BuiltGroup build_S(int n);
/// e_1 acting on R^2 by [[alpha,-beta],[beta,alpha]], identity gram.  Not both zero.
BuiltGroup build_G3(double alpha, double beta);
/// e_1 = diag(alpha,-1,0), e_2 = E_13, e_3 = -E_23, identity gram.
BuiltGroup build_Galpha(double alpha);
/// Traceless diagonal a (orthonormal Helmert basis) plus strictly upper triangular n.
BuiltGroup build_iwasawa_sl(int n);
/// so(3) with [e_i, e_j] = e_k cyclically; algebra only.
BuiltGroup build_so3();

/// Generalized Heisenberg data: J[k] is the skew map J_{Z_k} on v.
struct DamekRicciData {
  int dim_v = 2;
  int dim_z = 1;
  std::vector<Eigen::MatrixXd> J;
};

/// Default Clifford data for (dim_v, dim_z): dim_z = 1 with even dim_v, or
/// dim_v = 4 with dim_z <= 3 (quaternions).  Throws ConstructionError otherwise.
DamekRicciData default_damek_ricci_data(int dim_v, int dim_z);

/// Algebra-only: basis v_1..v_p, z_1..z_q, A with [v_i,v_j] = sum_k <J_k v_i, v_j> z_k,
/// [A,v] = v/2, [A,z] = z, identity gram.  Validates J_Z^2 = -|Z|^2 Id.
BuiltGroup build_damek_ricci(const DamekRicciData& data);

}  // namespace lieharm
