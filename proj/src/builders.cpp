#include "lieharm/builders.hpp"

#include "lieharm/error.hpp"

#include <cmath>
#include <string>

namespace lieharm {

namespace {

std::string idx(int r, int s) { return std::to_string(r + 1) + std::to_string(s + 1); }

BuiltGroup from_matrices(std::string name, std::vector<Eigen::MatrixXd> mats,
                         std::vector<std::string> labels,
                         std::optional<Eigen::MatrixXd> gram = std::nullopt) {
  MatrixRealization R = realization_from_matrices(std::move(mats), std::move(gram));
  LieAlgebra A = R.algebra();
  return {std::move(name), std::move(A), std::move(R), std::move(labels)};
}

}  // namespace

Eigen::MatrixXd unit_matrix(int N, int r, int s) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
  m(r, s) = 1.0;
  return m;
}

BuiltGroup build_N(int n) {
  if (n < 2) throw InputError("build_N: n must be at least 2");
  std::vector<Eigen::MatrixXd> mats;
  std::vector<std::string> labels;
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      mats.push_back(unit_matrix(n, r, s));
      labels.push_back("E" + idx(r, s));
    }
  return from_matrices("N(" + std::to_string(n) + ")", std::move(mats), std::move(labels));
}

BuiltGroup build_H(int n) {
  if (n < 1) throw InputError("build_H: n must be at least 1");
  const int N = n + 2;
  std::vector<Eigen::MatrixXd> mats;
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) {
    mats.push_back(unit_matrix(N, 0, 1 + k));
    labels.push_back("X" + std::to_string(k + 1));
  }
  for (int k = 0; k < n; ++k) {
    mats.push_back(unit_matrix(N, 1 + k, N - 1));
    labels.push_back("Y" + std::to_string(k + 1));
  }
  mats.push_back(unit_matrix(N, 0, N - 1));
  labels.push_back("Z");
  return from_matrices("H(" + std::to_string(n) + ")", std::move(mats), std::move(labels));
}

BuiltGroup build_K(int n) {
  if (n < 2) throw InputError("build_K: n must be at least 2");
  const int N = n + 1;
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, N);
  for (int r = 0; r + 1 < n; ++r) X(r, r + 1) = 1.0;
  X /= std::sqrt(static_cast<double>(n - 1));
  std::vector<Eigen::MatrixXd> mats{X};
  std::vector<std::string> labels{"X"};
  for (int k = 0; k < n; ++k) {
    mats.push_back(unit_matrix(N, k, N - 1));
    labels.push_back("Y" + std::to_string(k + 1));
  }
  return from_matrices("K(" + std::to_string(n) + ")", std::move(mats), std::move(labels));
}

BuiltGroup build_S(int n) {
  if (n < 2) throw InputError("build_S: n must be at least 2");
  std::vector<Eigen::MatrixXd> mats;
  std::vector<std::string> labels;
  for (int t = 0; t < n; ++t) {
    mats.push_back(unit_matrix(n, t, t));
    labels.push_back("D" + std::to_string(t + 1));
  }
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      mats.push_back(unit_matrix(n, r, s));
      labels.push_back("E" + idx(r, s));
    }
  return from_matrices("S(" + std::to_string(n) + ")", std::move(mats), std::move(labels));
}

BuiltGroup build_G3(double alpha, double beta) {
  if (alpha == 0.0 && beta == 0.0) throw InputError("build_G3: alpha and beta must not both vanish");
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(3, 3);
  e1.topLeftCorner(2, 2) << alpha, -beta, beta, alpha;
  return from_matrices("G3(" + std::to_string(alpha) + "," + std::to_string(beta) + ")",
                       {e1, unit_matrix(3, 0, 2), unit_matrix(3, 1, 2)}, {"e1", "e2", "e3"},
                       Eigen::MatrixXd::Identity(3, 3));
}

BuiltGroup build_Galpha(double alpha) {
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(3, 3);
  e1(0, 0) = alpha;
  e1(1, 1) = -1.0;
  return from_matrices("G_alpha(" + std::to_string(alpha) + ")",
                       {e1, unit_matrix(3, 0, 2), -unit_matrix(3, 1, 2)}, {"e1", "e2", "e3"},
                       Eigen::MatrixXd::Identity(3, 3));
}

BuiltGroup build_iwasawa_sl(int n) {
  if (n < 2) throw InputError("build_iwasawa_sl: n must be at least 2");
  std::vector<Eigen::MatrixXd> mats;
  std::vector<std::string> labels;
  for (int k = 1; k < n; ++k) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < k; ++i) h(i, i) = 1.0;
    h(k, k) = -static_cast<double>(k);
    mats.push_back(h / std::sqrt(static_cast<double>(k * (k + 1))));
    labels.push_back("H" + std::to_string(k));
  }
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      mats.push_back(unit_matrix(n, r, s));
      labels.push_back("E" + idx(r, s));
    }
  return from_matrices("iwasawa_sl(" + std::to_string(n) + ")", std::move(mats), std::move(labels));
}

BuiltGroup build_so3() {
  LieAlgebra A = LieAlgebra::from_brackets(3,
                                           {{0, 1, Eigen::Vector3d(0, 0, 1)},
                                            {1, 2, Eigen::Vector3d(1, 0, 0)},
                                            {2, 0, Eigen::Vector3d(0, 1, 0)}},
                                           Eigen::MatrixXd::Identity(3, 3));
  return {"so3", std::move(A), std::nullopt, {"e1", "e2", "e3"}};
}

DamekRicciData default_damek_ricci_data(int dim_v, int dim_z) {
  DamekRicciData d{dim_v, dim_z, {}};
  if (dim_z == 1 && dim_v >= 2 && dim_v % 2 == 0) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim_v, dim_v);
    for (int b = 0; b < dim_v; b += 2) {
      J(b + 1, b) = 1.0;
      J(b, b + 1) = -1.0;
    }
    d.J.push_back(J);
    return d;
  }
  if (dim_v == 4 && dim_z >= 1 && dim_z <= 3) {
    // left multiplication by i, j, k on the quaternions, basis (1, i, j, k)
    Eigen::Matrix4d Li, Lj, Lk;
    Li << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    Lj << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
    Lk << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
    const Eigen::MatrixXd all[3] = {Li, Lj, Lk};
    for (int k = 0; k < dim_z; ++k) d.J.push_back(all[k]);
    return d;
  }
  throw ConstructionError("no default generalized Heisenberg data for dim_v=" +
                          std::to_string(dim_v) + ", dim_z=" + std::to_string(dim_z) +
                          "; supply J explicitly");
}

BuiltGroup build_damek_ricci(const DamekRicciData& data) {
  const int p = data.dim_v, q = data.dim_z;
  if (p < 1 || q < 1) throw InputError("build_damek_ricci: dimensions must be positive");
  if (static_cast<int>(data.J.size()) != q)
    throw ConstructionError("build_damek_ricci: need one J matrix per center basis vector");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(p, p);
  for (int k = 0; k < q; ++k) {
    const Eigen::MatrixXd& J = data.J[k];
    if (J.rows() != p || J.cols() != p)
      throw ConstructionError("build_damek_ricci: J_" + std::to_string(k + 1) + " has wrong shape");
    if ((J + J.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw ConstructionError("Clifford identity failed: J_" + std::to_string(k + 1) +
                              " is not skew-symmetric");
    if ((J * J + I).cwiseAbs().maxCoeff() > 1e-12)
      throw ConstructionError("Clifford identity failed: J_" + std::to_string(k + 1) +
                              "^2 != -Id");
    for (int l = k + 1; l < q; ++l)
      if ((J * data.J[l] + data.J[l] * J).cwiseAbs().maxCoeff() > 1e-12)
        throw ConstructionError("Clifford identity failed: J_" + std::to_string(k + 1) + " J_" +
                                std::to_string(l + 1) + " + J_" + std::to_string(l + 1) + " J_" +
                                std::to_string(k + 1) + " != 0");
  }

  const int d = p + q + 1;
  const int a = d - 1;
  std::vector<Eigen::MatrixXd> ad(d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < q; ++k) ad[i](p + k, j) = data.J[k](j, i);
  for (int i = 0; i < p; ++i) {
    ad[a](i, i) = 0.5;
    ad[i](i, a) = -0.5;
  }
  for (int k = 0; k < q; ++k) {
    ad[a](p + k, p + k) = 1.0;
    ad[p + k](p + k, a) = -1.0;
  }

  std::vector<std::string> labels;
  for (int i = 0; i < p; ++i) labels.push_back("V" + std::to_string(i + 1));
  for (int k = 0; k < q; ++k) labels.push_back("Z" + std::to_string(k + 1));
  labels.push_back("A");
  return {"damek_ricci(" + std::to_string(p) + "," + std::to_string(q) + ")",
          LieAlgebra(std::move(ad), Eigen::MatrixXd::Identity(d, d)), std::nullopt,
          std::move(labels)};
}

}  // namespace lieharm
