#include "lieharm/constructions.hpp"

#include "lieharm/calculus.hpp"
#include "lieharm/error.hpp"
#include "lieharm/geometry.hpp"
#include "lieharm/matrix_group.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lieharm {

std::complex<double> symmetric_pairing(const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
  if (z.size() != w.size()) throw InputError("symmetric_pairing: length mismatch");
  return (z.array() * w.array()).sum();
}

double IsotropicBasis::isotropy_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i; j < vectors.size(); ++j)
      worst = std::max(worst, std::abs(symmetric_pairing(vectors[i], vectors[j])));
  return worst;
}

int IsotropicBasis::complex_rank() const {
  if (vectors.empty()) return 0;
  Eigen::MatrixXcd m(ambient, dim());
  for (int k = 0; k < dim(); ++k) m.col(k) = vectors[static_cast<std::size_t>(k)];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

IsotropicBasis max_isotropic(int n) {
  if (n < 2) throw InputError("max_isotropic: n must be at least 2");
  IsotropicBasis W{n, {}};
  for (int k = 0; 2 * k + 1 < n; ++k) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
    w(2 * k) = 1.0;
    w(2 * k + 1) = std::complex<double>(0.0, 1.0);
    W.vectors.push_back(w);
  }
  return W;
}

IsotropicBasis adapted_isotropic(const Eigen::VectorXd& xi) {
  const int n = static_cast<int>(xi.size());
  if (n < 2) throw InputError("adapted_isotropic: n must be at least 2");
  const double norm = xi.norm();
  if (norm <= 1e-12) return max_isotropic(n);

  // Householder QR: the first column of Q is +-xi/|xi|, the rest span its complement
  const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(xi).householderQ();
  Eigen::MatrixXd U(n, n);
  U.leftCols(n - 1) = Q.rightCols(n - 1);
  U.col(n - 1) = xi / norm;
  IsotropicBasis W{n, {}};
  for (int k = 0; 2 * k + 1 < n; ++k) {
    Eigen::VectorXcd w(n);
    w.real() = U.col(2 * k);
    w.imag() = U.col(2 * k + 1);
    W.vectors.push_back(w);
  }
  return W;
}

Eigen::VectorXd xi_vector(const LieAlgebra& A, const Eigen::MatrixXd& horizontal_onb) {
  if (horizontal_onb.rows() != A.dim()) throw InputError("xi_vector: basis vectors have wrong length");
  if (orthonormality_residual(A, horizontal_onb) > 1e-10)
    throw PreconditionError("xi_vector: horizontal basis is not orthonormal");
  const Subspace D = derived_algebra(A);
  if (D.dim() > 0 &&
      (horizontal_onb.transpose() * A.gram() * D.basis).cwiseAbs().maxCoeff() > 1e-10)
    throw PreconditionError("xi_vector: horizontal basis is not orthogonal to [g,g]");
  Eigen::VectorXd xi(horizontal_onb.cols());
  for (int t = 0; t < horizontal_onb.cols(); ++t) xi(t) = ad_trace(A, horizontal_onb.col(t));
  return xi;
}

IsotropicBasis restrict_to_xi_perp(const IsotropicBasis& W, const Eigen::VectorXcd& xi) {
  if (xi.size() != W.ambient) throw InputError("restrict_to_xi_perp: xi has wrong length");
  std::vector<std::complex<double>> f;
  int pivot = -1;
  double best = 0.0;
  for (int j = 0; j < W.dim(); ++j) {
    const auto& w = W.vectors[static_cast<std::size_t>(j)];
    f.push_back(symmetric_pairing(w, xi));
    const double scale = std::max(1.0, w.norm() * xi.norm());
    if (std::abs(f.back()) > 1e-12 * scale && std::abs(f.back()) > best) {
      best = std::abs(f.back());
      pivot = j;
    }
  }
  if (pivot < 0) return W;
  IsotropicBasis V{W.ambient, {}};
  const auto& wp = W.vectors[static_cast<std::size_t>(pivot)];
  for (int j = 0; j < W.dim(); ++j) {
    if (j == pivot) continue;
    const auto& w = W.vectors[static_cast<std::size_t>(j)];
    V.vectors.push_back(w - (f[static_cast<std::size_t>(j)] / f[static_cast<std::size_t>(pivot)]) * wp);
  }
  return V;
}

const char* to_string(FirstKind k) {
  switch (k) {
    case FirstKind::N: return "N";
    case FirstKind::H: return "H";
    case FirstKind::K: return "K";
    case FirstKind::S: return "S";
  }
  return "?";
}

namespace {

int basis_index(const MatrixRealization& R, const Eigen::MatrixXd& m) {
  for (std::size_t j = 0; j < R.rep().size(); ++j)
    if ((R.rep()[j] - m).cwiseAbs().maxCoeff() < 1e-14) return static_cast<int>(j);
  throw ConstructionError("basis matrix not found in realization");
}

std::string format_vector(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v(k);
  os << ")";
  return os.str();
}

}  // namespace

FirstConstruction first_construction(FirstKind kind, int n) {
  FirstConstruction fc{kind, n, [&] {
                         switch (kind) {
                           case FirstKind::N: return build_N(n);
                           case FirstKind::H: return build_H(n);
                           case FirstKind::K: return build_K(n);
                           case FirstKind::S: return build_S(n);
                         }
                         throw InputError("unknown construction kind");
                       }(),
                       {}, {}, {}, {}, {}, {}, 0.0};
  const MatrixRealization& R = *fc.group.realization;
  const LieAlgebra& A = fc.group.algebra;
  const int N = R.ambient();
  std::vector<int> horizontal;

  switch (kind) {
    case FirstKind::N:
      for (int r = 0; r + 1 < n; ++r) {
        fc.phi.push_back(ScalarField::entry(r, r + 1));
        horizontal.push_back(basis_index(R, unit_matrix(N, r, r + 1)));
      }
      break;
    case FirstKind::H:
      for (int k = 0; k < n; ++k) {
        fc.phi.push_back(ScalarField::entry(0, 1 + k));
        horizontal.push_back(k);
      }
      for (int k = 0; k < n; ++k) {
        fc.phi.push_back(ScalarField::entry(1 + k, N - 1));
        horizontal.push_back(n + k);
      }
      break;
    case FirstKind::K:
      fc.phi.push_back(std::sqrt(static_cast<double>(n - 1)) * ScalarField::entry(0, 1));
      fc.phi.push_back(ScalarField::entry(n - 1, n));
      horizontal = {0, n};
      break;
    case FirstKind::S:
      for (int t = 0; t < n; ++t) {
        fc.phi.push_back(ScalarField::log_diag(t));
        horizontal.push_back(t);
      }
      break;
  }

  const int m = static_cast<int>(fc.phi.size());
  if (m < 2)
    throw ConstructionError("first construction: g/[g,g] has dimension " + std::to_string(m) +
                            ", need at least 2");
  fc.horizontal_onb = Eigen::MatrixXd::Zero(A.dim(), m);
  for (int k = 0; k < m; ++k) fc.horizontal_onb(horizontal[static_cast<std::size_t>(k)], k) = 1.0;

  // dPhi_e maps the horizontal frame to the standard basis and kills [g,g]
  const GroupPoint e{Eigen::MatrixXd::Identity(N, N)};
  const Subspace D = derived_algebra(A);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      const double d = derivs(fc.phi[k], R, e, fc.horizontal_onb.col(j)).first;
      fc.differential_residual = std::max(fc.differential_residual, std::abs(d - (k == j ? 1.0 : 0.0)));
    }
    for (int j = 0; j < D.dim(); ++j)
      fc.differential_residual =
          std::max(fc.differential_residual, std::abs(derivs(fc.phi[k], R, e, D.basis.col(j)).first));
  }
  if (fc.differential_residual > 1e-10)
    throw ConstructionError("first construction: Phi is not the natural epimorphism");

  fc.xi = xi_vector(A, fc.horizontal_onb);
  fc.W = fc.xi.norm() <= 1e-12 ? max_isotropic(m) : adapted_isotropic(fc.xi);
  fc.V = restrict_to_xi_perp(fc.W, fc.xi.cast<std::complex<double>>());
  if (fc.V.dim() == 0)
    throw ConstructionError(std::string("first construction on ") + fc.group.name +
                            ": isotropic space V = {w in W : (w, xi) = 0} is zero-dimensional (dim W = " +
                            std::to_string(fc.W.dim()) + ", xi = " + format_vector(fc.xi) + ")");
  for (const auto& v : fc.V.vectors) fc.family.push_back(ComplexField::pair(v, fc.phi));
  return fc;
}

// ---------------------------------------------------------------------------
// second construction

namespace {

ConditionRecord record(std::string name, double residual, double tol, std::string detail = {}) {
  return {std::move(name), residual, tol, residual < tol, std::move(detail)};
}

Subspace nilradical_span(const RootGradedAlgebra& G) {
  std::vector<Eigen::MatrixXd> blocks;
  Eigen::Index cols = 0;
  for (const auto& r : G.roots) cols += r.space.dim();
  Eigen::MatrixXd all(G.algebra.dim(), cols);
  Eigen::Index c = 0;
  for (const auto& r : G.roots) {
    all.middleCols(c, r.space.dim()) = r.space.basis;
    c += r.space.dim();
  }
  return Subspace::span(all);
}

}  // namespace

std::vector<ConditionRecord> validate_root_graded(const RootGradedAlgebra& G) {
  const LieAlgebra& S = G.algebra;
  const Eigen::MatrixXd& gram = S.gram();
  constexpr double tol = 1e-10;
  std::vector<ConditionRecord> out;

  if (G.beta < 0 || G.beta >= static_cast<int>(G.roots.size()))
    throw InputError("root-graded algebra: beta index out of range");
  for (const auto& r : G.roots)
    if (r.functional.size() != G.a.dim() || r.space.ambient != S.dim())
      throw InputError("root-graded algebra: root '" + r.label + "' has inconsistent shape");

  // [V, X] = alpha(V) X
  double action = 0.0;
  for (const auto& r : G.roots)
    for (int i = 0; i < G.a.dim(); ++i) {
      const Eigen::MatrixXd adV = ad_matrix(S, G.a.basis.col(i));
      for (int k = 0; k < r.space.dim(); ++k) {
        const Eigen::VectorXd X = r.space.basis.col(k);
        action = std::max(action, (adV * X - r.functional(i) * X).cwiseAbs().maxCoeff());
      }
    }
  out.push_back(record("root_action", action, tol));

  // a abelian
  double abel = 0.0;
  for (int i = 0; i < G.a.dim(); ++i)
    for (int j = 0; j < G.a.dim(); ++j)
      abel = std::max(abel, bracket(S, G.a.basis.col(i), G.a.basis.col(j)).cwiseAbs().maxCoeff());
  out.push_back(record("a_abelian", abel, tol));

  // s = n + a, n an ideal
  const Subspace n = nilradical_span(G);
  int root_dims = 0;
  for (const auto& r : G.roots) root_dims += r.space.dim();
  const int span_gap = std::abs(n.dim() + G.a.dim() - S.dim()) + std::abs(root_dims - n.dim());
  out.push_back(record("decomposition", span_gap, 0.5,
                       "dim a + sum dim n_alpha = " + std::to_string(G.a.dim() + root_dims) +
                           ", dim s = " + std::to_string(S.dim())));
  const Subspace sn = bracket_span(S, Subspace::whole(S.dim()), n);
  double ideal = 0.0;
  for (int k = 0; k < sn.dim(); ++k) ideal = std::max(ideal, containment_residual(n, sn.basis.col(k)));
  out.push_back(record("n_ideal", ideal, tol));

  // pairwise orthogonality of the root spaces and of n with a
  double orth = 0.0;
  for (std::size_t p = 0; p < G.roots.size(); ++p) {
    if (G.a.dim() > 0)
      orth = std::max(orth, (G.roots[p].space.basis.transpose() * gram * G.a.basis).cwiseAbs().maxCoeff());
    for (std::size_t q = p + 1; q < G.roots.size(); ++q)
      if (G.roots[p].space.dim() > 0 && G.roots[q].space.dim() > 0)
        orth = std::max(orth, (G.roots[p].space.basis.transpose() * gram * G.roots[q].space.basis)
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  out.push_back(record("orthogonal_root_spaces", orth, tol));

  // ad_a self-adjoint on n
  double selfadj = 0.0;
  const Subspace nonb = orthonormalize(S, n);
  for (int i = 0; i < G.a.dim(); ++i) {
    const Eigen::MatrixXd adV = ad_matrix(S, G.a.basis.col(i));
    const Eigen::MatrixXd M = nonb.basis.transpose() * gram * adV * nonb.basis;
    selfadj = std::max(selfadj, (M - M.transpose()).cwiseAbs().maxCoeff());
  }
  out.push_back(record("ad_a_self_adjoint", selfadj, tol));

  // n_beta orthogonal to [n, n]
  const Subspace nn = bracket_span(S, n, n);
  const Subspace& nb = G.roots[static_cast<std::size_t>(G.beta)].space;
  const double perp = (nn.dim() > 0 && nb.dim() > 0)
                          ? (nb.basis.transpose() * gram * nn.basis).cwiseAbs().maxCoeff()
                          : 0.0;
  out.push_back(record("beta_perp_derived_n", perp, tol,
                       perp < tol ? std::string()
                                  : "root '" + G.roots[static_cast<std::size_t>(G.beta)].label +
                                        "' meets [n,n]; it cannot serve as beta"));
  return out;
}

SecondConstructionReport second_construction_check(const RootGradedAlgebra& G,
                                                   const std::vector<Eigen::VectorXd>& a_samples,
                                                   double dilation_tol, double minimality_tol) {
  SecondConstructionReport rep;
  rep.hypotheses = validate_root_graded(G);
  rep.hypotheses_ok = std::all_of(rep.hypotheses.begin(), rep.hypotheses.end(),
                                  [](const ConditionRecord& r) { return r.pass; });
  const RootSpace& beta = G.roots[static_cast<std::size_t>(G.beta)];
  rep.beta_dim = beta.space.dim();
  if (!rep.hypotheses_ok) {
    rep.checks.push_back({"dilation", 0.0, dilation_tol, false, "skipped: hypotheses fail"});
    rep.checks.push_back({"minimality", 0.0, minimality_tol, false, "skipped: hypotheses fail"});
    rep.pass = false;
    return rep;
  }
  const LieAlgebra& S = G.algebra;

  // dilation
  const Subspace nb = orthonormalize(S, beta.space);
  for (const auto& coeffs : a_samples) {
    if (coeffs.size() != G.a.dim()) throw InputError("a-sample has wrong length");
    const Eigen::VectorXd V = G.a.basis * coeffs;
    const Eigen::MatrixXd Ad = exp_matrix(ad_matrix(S, V));
    const double expected = std::exp(2.0 * beta.functional.dot(coeffs));
    for (int k = 0; k < nb.dim(); ++k) {
      const Eigen::VectorXd X = nb.basis.col(k);
      const Eigen::VectorXd AX = Ad * X;
      const double ratio = S.inner(AX, AX) / S.inner(X, X);
      rep.max_dilation_residual =
          std::max(rep.max_dilation_residual, std::abs(ratio - expected) / std::max(1.0, expected));
    }
  }
  rep.checks.push_back(record("dilation", rep.max_dilation_residual, dilation_tol,
                              std::to_string(a_samples.size()) + " samples of V in a"));

  // minimality of the fibre M.A at e: <H, X> = sum_U <[X,U],U> over an onb of a + m
  std::vector<Eigen::VectorXd> fibre;
  const Subspace aonb = orthonormalize(S, G.a);
  for (int i = 0; i < aonb.dim(); ++i) fibre.push_back(aonb.basis.col(i));
  for (std::size_t r = 0; r < G.roots.size(); ++r) {
    if (static_cast<int>(r) == G.beta) continue;
    const Subspace onb = orthonormalize(S, G.roots[r].space);
    for (int k = 0; k < onb.dim(); ++k) fibre.push_back(onb.basis.col(k));
  }
  const ConnectionTable T = koszul(S);
  double bracket_route = 0.0, connection_route = 0.0;
  for (int k = 0; k < nb.dim(); ++k) {
    const Eigen::VectorXd X = nb.basis.col(k);
    double pairing = 0.0;
    Eigen::VectorXd H = Eigen::VectorXd::Zero(S.dim());
    for (const auto& U : fibre) {
      pairing += S.inner(bracket(S, X, U), U);
      const Eigen::VectorXd u = T.to_frame(S, U);
      H += T.to_declared(T.covariant(u, u));
    }
    bracket_route = std::max(bracket_route, std::abs(pairing));
    connection_route = std::max(connection_route, std::abs(S.inner(H, X)));
  }
  rep.max_minimality_residual = std::max(bracket_route, connection_route);
  rep.checks.push_back(record("minimality_bracket", bracket_route, minimality_tol,
                              "sum <[X,U],U> over an onb of a + m"));
  rep.checks.push_back(record("minimality_connection", connection_route, minimality_tol,
                              "<sum nabla_U U, X> from the Koszul table"));
  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                         [](const ConditionRecord& r) { return r.pass; });
  return rep;
}

RootGradedAlgebra damek_ricci_root_graded(const BuiltGroup& dr, int dim_v, int dim_z,
                                          const std::string& beta) {
  const int d = dr.algebra.dim();
  if (d != dim_v + dim_z + 1) throw InputError("damek_ricci_root_graded: dimensions do not match");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  RootGradedAlgebra G{dr.algebra, Subspace{d, I.col(d - 1)}, {}, 0};
  G.roots.push_back({"v", Eigen::VectorXd::Constant(1, 0.5), Subspace{d, I.leftCols(dim_v)}});
  G.roots.push_back({"z", Eigen::VectorXd::Constant(1, 1.0), Subspace{d, I.middleCols(dim_v, dim_z)}});
  if (beta == "v") G.beta = 0;
  else if (beta == "z") G.beta = 1;
  else throw InputError("damek_ricci_root_graded: beta must be 'v' or 'z'");
  return G;
}

RootGradedAlgebra iwasawa_root_graded(const BuiltGroup& iw, int n, const std::string& beta) {
  if (!iw.realization) throw InputError("iwasawa_root_graded: needs the matrix realization");
  const MatrixRealization& R = *iw.realization;
  const int d = iw.algebra.dim();
  const int rank = n - 1;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  RootGradedAlgebra G{iw.algebra, Subspace{d, I.leftCols(rank)}, {}, -1};
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      Eigen::VectorXd f(rank);
      for (int k = 0; k < rank; ++k) f(k) = R.rep()[k](r, r) - R.rep()[k](s, s);
      const int j = basis_index(R, unit_matrix(n, r, s));
      const std::string label = "e" + std::to_string(r + 1) + "-e" + std::to_string(s + 1);
      if (label == beta) G.beta = static_cast<int>(G.roots.size());
      G.roots.push_back({label, f, Subspace{d, I.col(j)}});
    }
  if (G.beta < 0) throw InputError("iwasawa_root_graded: unknown root '" + beta + "'");
  return G;
}

}  // namespace lieharm
