#include "lieharm/builders.hpp"
#include "lieharm/error.hpp"
#include "lieharm/lie_algebra.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <limits>

using namespace lieharm;

namespace {

std::vector<int> dims(const std::vector<Subspace>& s) {
  std::vector<int> d;
  for (const auto& x : s) d.push_back(x.dim());
  return d;
}

LieAlgebra heisenberg3() {
  // [e1, e2] = e3
  return LieAlgebra::from_brackets(3, {{0, 1, Eigen::Vector3d(0, 0, 1)}}, Eigen::Matrix3d::Identity());
}

}  // namespace

TEST_SUITE("lie-core") {

TEST_CASE("bracket is bilinear and antisymmetric") {
  const LieAlgebra A = heisenberg3();
  CHECK(A.constant(0, 1, 2) == 1.0);
  CHECK(A.constant(1, 0, 2) == -1.0);
  Rng rng(4);
  const Eigen::VectorXd x = rng.normal_vector(3), y = rng.normal_vector(3);
  const Eigen::VectorXd b = bracket(A, x, y);
  CHECK((b + bracket(A, y, x)).norm() == doctest::Approx(0.0));
  CHECK((b - oracle::br(A, x, y)).norm() < 1e-14);
  CHECK(b(2) == doctest::Approx(x(0) * y(1) - x(1) * y(0)));
}

TEST_CASE("constructor validation") {
  std::vector<Eigen::MatrixXd> ad(2, Eigen::MatrixXd::Zero(2, 2));
  ad[0](1, 1) = 1.0;  // [e1, e2] = e2 but [e2, e1] left at zero
  CHECK_THROWS_AS(LieAlgebra(ad, Eigen::Matrix2d::Identity()), InputError);

  Eigen::Matrix2d bad_gram;
  bad_gram << 1, 2, 2, 1;
  CHECK_THROWS_AS(LieAlgebra::abelian(2).with_gram(bad_gram), InputError);
  Eigen::Matrix2d asym;
  asym << 1, 0.1, 0, 1;
  CHECK_THROWS_AS(LieAlgebra::abelian(2).with_gram(asym), InputError);

  std::vector<Eigen::MatrixXd> nan_ad(1, Eigen::MatrixXd::Constant(1, 1, std::numeric_limits<double>::quiet_NaN()));
  CHECK_THROWS_AS(LieAlgebra(nan_ad, Eigen::MatrixXd::Identity(1, 1)), InputError);
  CHECK_THROWS_AS(LieAlgebra::from_brackets(2, {{0, 2, Eigen::Vector2d(1, 0)}}, Eigen::Matrix2d::Identity()), InputError);
}

TEST_CASE("jacobi holds on the builders and fails on a bad table") {
  for (const auto& g : {build_N(4), build_H(2), build_K(3), build_S(3), build_G3(1, 0.5), build_Galpha(2),
                        build_iwasawa_sl(3), build_so3(), build_damek_ricci(default_damek_ricci_data(4, 3))})
    CHECK_MESSAGE(jacobi_residual(g.algebra) < 1e-12, g.name);

  // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 violates Jacobi
  const LieAlgebra bad = LieAlgebra::from_brackets(
      3, {{0, 1, Eigen::Vector3d(0, 0, 1)}, {1, 2, Eigen::Vector3d(1, 0, 0)}, {0, 2, Eigen::Vector3d(1, 0, 0)}},
      Eigen::Matrix3d::Identity());
  CHECK(jacobi_residual(bad) > 0.5);
}

TEST_CASE("derived and lower central series of N_4") {
  // n_4: E12 E13 E14 E23 E24 E34; [n,n] = <E13,E24,E14>, [[n,n],[n,n]] = 0,
  // [n,[n,n]] = <E14>
  const LieAlgebra A = build_N(4).algebra;
  CHECK(dims(derived_series(A)) == std::vector<int>{6, 3, 0});
  CHECK(dims(lower_central_series(A)) == std::vector<int>{6, 3, 1, 0});
  CHECK(is_nilpotent(A));
  CHECK(is_solvable(A));
  CHECK_FALSE(is_abelian(A));
}

TEST_CASE("solvable but not nilpotent; neither") {
  CHECK(is_solvable(build_S(3).algebra));
  CHECK_FALSE(is_nilpotent(build_S(3).algebra));
  CHECK_FALSE(is_solvable(build_so3().algebra));
  CHECK_FALSE(is_nilpotent(build_so3().algebra));
  CHECK(is_abelian(LieAlgebra::abelian(4)));
  CHECK(dims(derived_series(build_so3().algebra)) == std::vector<int>{3, 3});  // perfect: stabilizes at once
}

TEST_CASE("centers") {
  const BuiltGroup h = build_H(2);
  const Subspace z = center(h.algebra);
  REQUIRE(z.dim() == 1);
  CHECK(containment_residual(z, Eigen::VectorXd::Unit(5, 4)) < 1e-12);
  CHECK(center(build_N(4).algebra).dim() == 1);
  CHECK(center(build_so3().algebra).dim() == 0);
  CHECK(center(build_G3(1, 0).algebra).dim() == 0);
  // s_2: D1 + D2 (the identity) is central
  const Subspace zs = center(build_S(2).algebra);
  REQUIRE(zs.dim() == 1);
  CHECK(containment_residual(zs, Eigen::Vector3d(1, 1, 0)) < 1e-12);
}

TEST_CASE("ad traces") {
  const LieAlgebra S = build_S(4).algebra;
  for (int t = 0; t < 4; ++t) CHECK(ad_trace(S, Eigen::VectorXd::Unit(S.dim(), t)) == doctest::Approx(5 - 2 * (t + 1)));
  for (const auto& g : {build_N(5), build_H(3), build_K(4)})
    for (int k = 0; k < g.algebra.dim(); ++k) CHECK(ad_trace(g.algebra, Eigen::VectorXd::Unit(g.algebra.dim(), k)) == 0.0);
}

TEST_CASE("orthonormalize and complements use the gram") {
  Rng rng(11);
  const Eigen::MatrixXd G = support::random_spd(rng, 4);
  const LieAlgebra A = LieAlgebra::abelian(4).with_gram(G);
  Eigen::MatrixXd v(4, 2);
  v << 1, 0, 1, 1, 0, 2, 0, 0;
  const Subspace q = orthonormalize(A, Subspace{4, v});
  CHECK((q.basis.transpose() * G * q.basis - Eigen::Matrix2d::Identity()).norm() < 1e-12);
  CHECK(A.inner(q.basis.col(0), v.col(0)) > 0);
  CHECK(same_subspace(q, Subspace{4, v}));
  const Subspace c = orthogonal_complement(A, q);
  CHECK(c.dim() == 2);
  CHECK((q.basis.transpose() * G * c.basis).norm() < 1e-12);

  Eigen::MatrixXd dep(4, 2);
  dep << 1, 2, 1, 2, 0, 0, 0, 0;
  CHECK_THROWS_AS(orthonormalize(A, Subspace{4, dep}), InputError);
}

TEST_CASE("Cholesky frame is orthonormal") {
  Rng rng(3);
  const LieAlgebra A = build_S(3).algebra.with_gram(support::random_spd(rng, 6));
  CHECK((A.frame().transpose() * A.gram() * A.frame() - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-12);
  CHECK((A.frame_inverse() * A.frame() - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-12);
}

TEST_CASE("damek-ricci clifford data is validated") {
  DamekRicciData d = default_damek_ricci_data(4, 2);
  d.J[1] = d.J[0];  // J1 J2 + J2 J1 != 0
  CHECK_THROWS_AS(build_damek_ricci(d), ConstructionError);
  CHECK_THROWS_AS(default_damek_ricci_data(3, 1), ConstructionError);
  const BuiltGroup dr = build_damek_ricci(default_damek_ricci_data(2, 1));
  CHECK(dr.algebra.dim() == 4);
  CHECK(is_solvable(dr.algebra));
}

}  // TEST_SUITE
