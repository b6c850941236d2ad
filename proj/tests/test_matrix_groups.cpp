#include "lieharm/builders.hpp"
#include "lieharm/error.hpp"
#include "lieharm/matrix_group.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <limits>

using namespace lieharm;

TEST_SUITE("matrix-groups") {

TEST_CASE("exp matches the reference on random matrices") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    Eigen::MatrixXd X(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) X(i, j) = rng.normal() * (1 + trial % 4);
    const Eigen::MatrixXd E = exp_matrix(X);
    const Eigen::MatrixXd R = oracle::expm(X);
    CHECK((E - R).norm() / R.norm() < 1e-12);
  }
}

TEST_CASE("exp of a nilpotent matrix is the finite series") {
  Eigen::Matrix3d N = Eigen::Matrix3d::Zero();
  N(0, 1) = 2;
  N(1, 2) = 3;
  N(0, 2) = 1;
  Eigen::Matrix3d expect = Eigen::Matrix3d::Identity() + N + 0.5 * N * N;
  CHECK(exp_matrix(N) == expect);
  CHECK(exp_matrix(N, 0.0) == Eigen::Matrix3d::Identity());
}

TEST_CASE("one-parameter subgroup property") {
  Rng rng(5);
  Eigen::MatrixXd X(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) X(i, j) = rng.normal();
  CHECK((exp_matrix(X, 0.3) * exp_matrix(X, 0.9) - exp_matrix(X, 1.2)).norm() < 1e-12);
  CHECK((exp_matrix(X, 0.7) * exp_matrix(X, -0.7) - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("exp rejects bad input") {
  CHECK_THROWS_AS(exp_matrix(Eigen::MatrixXd(2, 3)), InputError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(exp_matrix(bad), InputError);
}

TEST_CASE("builders are homomorphisms with the trace metric where declared") {
  for (const auto& g : {build_N(5), build_H(2), build_K(4), build_S(4), build_iwasawa_sl(4)}) {
    REQUIRE(g.realization);
    CHECK_MESSAGE(g.realization->homomorphism_residual() < 1e-12, g.name);
    CHECK_MESSAGE(g.realization->trace_metric_residual() < 1e-12, g.name);
  }
  for (const auto& g : {build_G3(0.5, 1.0), build_Galpha(2.0)}) {
    REQUIRE(g.realization);
    CHECK(g.realization->homomorphism_residual() < 1e-12);
    CHECK(g.algebra.gram() == Eigen::Matrix3d::Identity());
  }
}

TEST_CASE("structure constants recovered from matrices") {
  // N_3: E12, E13, E23 with [E12, E23] = E13
  std::vector<Eigen::MatrixXd> mats = {unit_matrix(3, 0, 1), unit_matrix(3, 0, 2), unit_matrix(3, 1, 2)};
  const MatrixRealization R = realization_from_matrices(mats);
  CHECK(R.algebra().constant(0, 2, 1) == doctest::Approx(1.0));
  CHECK(R.algebra().constant(2, 0, 1) == doctest::Approx(-1.0));
  CHECK(R.algebra().constant(0, 1, 1) == doctest::Approx(0.0));
  CHECK(R.algebra().gram().isApprox(Eigen::Matrix3d::Identity()));

  // E12 and E21 do not span a subalgebra
  CHECK_THROWS_AS(realization_from_matrices({unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)}), ConstructionError);
}

TEST_CASE("sampled points are deterministic and lie in the group") {
  const BuiltGroup s = build_S(3);
  const auto a = sample_points(*s.realization, 10, 99, 1.0);
  const auto b = sample_points(*s.realization, 10, 99, 1.0);
  const auto c = sample_points(*s.realization, 10, 100, 1.0);
  REQUIRE(a.size() == 10);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].matrix == b[k].matrix);
    for (int i = 0; i < 3; ++i) {
      CHECK(a[k].matrix(i, i) > 0.0);
      for (int j = 0; j < i; ++j) CHECK(a[k].matrix(i, j) == 0.0);
    }
  }
  CHECK(a[0].matrix != c[0].matrix);

  const BuiltGroup n = build_N(4);
  for (const auto& p : sample_points(*n.realization, 5, 1, 2.0))
    for (int i = 0; i < 4; ++i) CHECK(p.matrix(i, i) == 1.0);
}

TEST_CASE("realization validation") {
  const LieAlgebra A = build_N(3).algebra;
  CHECK_THROWS_AS(MatrixRealization(A, {unit_matrix(3, 0, 1)}), InputError);
  CHECK_THROWS_AS(MatrixRealization(A, {unit_matrix(3, 0, 1), unit_matrix(3, 0, 1), unit_matrix(3, 1, 2)}), InputError);
}

}  // TEST_SUITE
