#include "lieharm/foliations.hpp"

#include "lieharm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lieharm {

DistributionSpec::DistributionSpec(LieAlgebra A, const Subspace& vertical)
    : A_(std::move(A)), V_(orthonormalize(A_, vertical)), H_(orthogonal_complement(A_, V_)) {}

double DistributionSpec::involutivity_residual() const {
  double worst = 0.0;
  for (int i = 0; i < V_.dim(); ++i)
    for (int j = i + 1; j < V_.dim(); ++j) {
      const Eigen::VectorXd b = bracket(A_, V_.basis.col(i), V_.basis.col(j));
      for (int k = 0; k < H_.dim(); ++k) worst = std::max(worst, std::abs(A_.inner(b, H_.basis.col(k))));
    }
  return worst;
}

SecondForms second_forms(const DistributionSpec& D, const ConnectionTable& T) {
  const LieAlgebra& A = D.algebra();
  if (T.dim() != A.dim()) throw InputError("second_forms: connection table has the wrong dimension");
  const Subspace& V = D.vertical();
  const Subspace& H = D.horizontal();
  auto sym = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd xf = T.to_frame(A, x), yf = T.to_frame(A, y);
    return T.to_declared(0.5 * (T.covariant(xf, yf) + T.covariant(yf, xf)));
  };
  SecondForms f;
  f.vertical.assign(static_cast<std::size_t>(H.dim()), Eigen::MatrixXd::Zero(V.dim(), V.dim()));
  f.horizontal.assign(static_cast<std::size_t>(V.dim()), Eigen::MatrixXd::Zero(H.dim(), H.dim()));
  for (int i = 0; i < V.dim(); ++i)
    for (int j = i; j < V.dim(); ++j) {
      const Eigen::VectorXd s = sym(V.basis.col(i), V.basis.col(j));
      for (int k = 0; k < H.dim(); ++k)
        f.vertical[k](i, j) = f.vertical[k](j, i) = A.inner(s, H.basis.col(k));
    }
  for (int i = 0; i < H.dim(); ++i)
    for (int j = i; j < H.dim(); ++j) {
      const Eigen::VectorXd s = sym(H.basis.col(i), H.basis.col(j));
      for (int m = 0; m < V.dim(); ++m)
        f.horizontal[m](i, j) = f.horizontal[m](j, i) = A.inner(s, V.basis.col(m));
    }
  return f;
}

FoliationFlags classify(const DistributionSpec& D, const ConnectionTable& T, double tol) {
  const SecondForms f = second_forms(D, T);
  const int h = D.horizontal().dim();
  FoliationFlags flags;
  double geo = 0.0;
  for (const auto& m : f.vertical) geo += m.squaredNorm();
  flags.geodesic_residual = std::sqrt(geo);

  double conf = 0.0;
  Eigen::VectorXd vec = Eigen::VectorXd::Zero(D.algebra().dim());
  for (int m = 0; m < static_cast<int>(f.horizontal.size()); ++m) {
    if (h == 0) break;
    const double mean = f.horizontal[m].trace() / h;
    conf += (f.horizontal[m] - mean * Eigen::MatrixXd::Identity(h, h)).squaredNorm();
    vec += mean * D.vertical().basis.col(m);
  }
  flags.conformal_residual = std::sqrt(conf);
  flags.totally_geodesic = flags.geodesic_residual < tol;
  flags.conformal = flags.conformal_residual < tol;
  if (flags.conformal) {
    flags.conformal_vector = vec;
    flags.riemannian = std::sqrt(D.algebra().inner(vec, vec)) < tol;
  }
  return flags;
}

namespace {

// Residual vector of "line through u is a conformal foliation by geodesics",
// u a unit vector in frame coordinates.  Independent of any basis choice for H.
Eigen::VectorXd line_residual(const ConnectionTable& T, const Eigen::VectorXd& u) {
  const int n = T.dim();
  const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - u * u.transpose();
  Eigen::VectorXd out(n + n * n);
  out.head(n) = P * T.covariant(u, u);
  Eigen::MatrixXd S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S(i, j) = 0.5 * u.dot(T.nabla[i].col(j) + T.nabla[j].col(i));
  const Eigen::MatrixXd B = P * S * P;
  const double mean = B.trace() / (n - 1);
  out.tail(n * n) = (B - mean * P).reshaped();
  return out;
}

Eigen::VectorXd canonical_sign(Eigen::VectorXd u) {
  for (int k = 0; k < u.size(); ++k)
    if (std::abs(u(k)) > 1e-12) {
      if (u(k) < 0) u = -u;
      break;
    }
  return u;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> tangent_basis(const Eigen::VectorXd& u) {
  const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(u).householderQ();
  return Q.rightCols(2);
}

// Gauss-Newton on the sphere with a finite-difference Jacobian.
Eigen::VectorXd refine(const ConnectionTable& T, Eigen::VectorXd u, double initial_step) {
  double r = line_residual(T, u).norm();
  for (int iter = 0; iter < 80 && r > 1e-14; ++iter) {
    const auto tb = tangent_basis(u);
    auto at = [&](double a, double b) { return Eigen::VectorXd((u + a * tb.col(0) + b * tb.col(1)).normalized()); };
    const Eigen::VectorXd r0 = line_residual(T, u);
    constexpr double h = 1e-7;
    Eigen::MatrixXd J(r0.size(), 2);
    J.col(0) = (line_residual(T, at(h, 0)) - line_residual(T, at(-h, 0))) / (2 * h);
    J.col(1) = (line_residual(T, at(0, h)) - line_residual(T, at(0, -h))) / (2 * h);
    Eigen::Vector2d step = J.completeOrthogonalDecomposition().solve(-r0);
    if (!step.allFinite()) break;
    if (step.norm() > initial_step) step *= initial_step / step.norm();
    bool improved = false;
    for (int k = 0; k < 40; ++k) {
      const Eigen::VectorXd cand = at(step(0), step(1));
      const double rc = line_residual(T, cand).norm();
      if (rc < r) {
        u = cand;
        r = rc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return u;
}

double angle_between_lines(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::acos(std::min(1.0, std::abs(a.dot(b))));
}

}  // namespace

double conformal_geodesic_residual(const LieAlgebra& A, const ConnectionTable& T,
                                   const Eigen::VectorXd& v) {
  const Eigen::VectorXd u = T.to_frame(A, v);
  if (u.norm() == 0.0) throw DomainError("conformal_geodesic_residual: zero direction");
  return line_residual(T, u.normalized()).norm();
}

ScanResult scan_3d(const LieAlgebra& A, int grid, double hit_tol, std::uint64_t curvature_seed) {
  if (A.dim() != 3) throw InputError("scan_3d: algebra must be 3-dimensional");
  if (grid < 2) throw InputError("scan_3d: grid must be at least 2");
  const ConnectionTable T = koszul(A);
  const int N = grid * grid;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));

  std::vector<Eigen::Vector3d> pts(static_cast<std::size_t>(N));
  std::vector<double> res(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / N;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    pts[k] = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z);
    res[k] = line_residual(T, pts[k]).norm();
  }

  // well separated low-residual seeds, antipodes identified
  std::vector<int> order(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return res[a] < res[b]; });
  const double spacing = std::sqrt(4.0 * std::numbers::pi / N);
  std::vector<int> seeds;
  for (int k : order) {
    if (seeds.size() >= 24) break;
    bool far = true;
    for (int s : seeds)
      if (angle_between_lines(pts[k], pts[s]) < 8.0 * spacing) far = false;
    if (far) seeds.push_back(k);
  }

  ScanResult out;
  out.grid_points = N;
  out.min_residual = std::numeric_limits<double>::infinity();
  out.note = "numerical scan over left-invariant line fields; not a proof of nonexistence";
  for (int s : seeds) {
    const Eigen::VectorXd u = canonical_sign(refine(T, pts[s], 4.0 * spacing));
    const double r = line_residual(T, u).norm();
    out.min_residual = std::min(out.min_residual, r);
    if (!(r < hit_tol)) continue;
    bool duplicate = false;
    for (const auto& h : out.hits)
      if (angle_between_lines(T.to_frame(A, h.direction), u) < 1e-3) duplicate = true;
    if (duplicate) continue;

    ScanHit hit;
    hit.direction = T.to_declared(u);
    hit.grid_index = s;
    hit.residual = r;
    hit.flags = classify(DistributionSpec(A, Subspace{3, hit.direction}), T);
    // oriented horizontal frame (X, Y)
    const auto tb = tangent_basis(u);
    Eigen::Vector3d x = tb.col(0), y = tb.col(1);
    Eigen::Matrix3d M;
    M << u, x, y;
    if (M.determinant() < 0) y = -y;
    const Eigen::MatrixXd& adv_f = T.structure[0] * u(0) + T.structure[1] * u(1) + T.structure[2] * u(2);
    const Eigen::Vector3d vx = adv_f * x, vy = adv_f * y;
    Eigen::Matrix2d adj;
    adj << vx.dot(x), vy.dot(x), vx.dot(y), vy.dot(y);
    hit.alpha = adj(0, 0);
    hit.beta = adj(1, 0);
    Eigen::Matrix2d model;
    model << hit.alpha, -hit.beta, hit.beta, hit.alpha;
    hit.adjoint_residual = (adj - model).cwiseAbs().maxCoeff();
    hit.curvature = survey_sectional(CurvatureTensor(T), 500, curvature_seed);
    out.hits.push_back(std::move(hit));
  }
  std::stable_sort(out.hits.begin(), out.hits.end(),
                   [](const ScanHit& a, const ScanHit& b) { return a.grid_index < b.grid_index; });
  return out;
}

Certificate constant_curvature_certificate(const LieAlgebra& A, const Eigen::VectorXd& v,
                                           std::uint64_t seed) {
  std::vector<std::string> failed;
  if (A.dim() != 3) throw PreconditionError("not 3-dimensional");
  if (v.size() != 3 || A.inner(v, v) <= 0.0) throw InputError("certificate: invalid direction");
  if (center(A).dim() != 0) failed.emplace_back("not centerless");
  if (!is_solvable(A)) failed.emplace_back("not solvable");
  const ConnectionTable T = koszul(A);
  const DistributionSpec D(A, Subspace{3, v});
  const FoliationFlags flags = classify(D, T);
  if (!(flags.conformal && flags.totally_geodesic))
    failed.emplace_back("direction is not a conformal foliation by geodesics");
  if (!failed.empty()) {
    std::string msg;
    for (const auto& f : failed) msg += (msg.empty() ? "" : "; ") + f;
    throw PreconditionError(msg);
  }

  Certificate c;
  c.classify_residual = std::hypot(flags.geodesic_residual, flags.conformal_residual);
  const Eigen::Vector3d u = T.to_frame(A, v).normalized();
  const auto tb = tangent_basis(u);
  Eigen::Vector3d x = tb.col(0), y = tb.col(1);
  Eigen::Matrix3d M;
  M << u, x, y;
  if (M.determinant() < 0) y = -y;
  const Eigen::MatrixXd adv = T.structure[0] * u(0) + T.structure[1] * u(1) + T.structure[2] * u(2);
  const Eigen::Vector3d vx = adv * x, vy = adv * y;
  c.alpha = vx.dot(x);
  c.beta = vx.dot(y);
  Eigen::Matrix2d adj, model;
  adj << vx.dot(x), vy.dot(x), vx.dot(y), vy.dot(y);
  model << c.alpha, -c.beta, c.beta, c.alpha;
  c.adjoint_residual = (adj - model).cwiseAbs().maxCoeff();

  Eigen::MatrixXd adx = Eigen::MatrixXd::Zero(3, 3);
  for (int a = 0; a < 3; ++a) adx += x(a) * T.structure[a];
  c.horizontal_bracket = (adx * y).norm();

  const Subspace derived = derived_algebra(A);
  Eigen::MatrixXd xy(3, 2);
  xy << T.to_declared(x), T.to_declared(y);
  const Subspace H{3, xy};
  double span_res = derived.dim() == 2 ? 0.0 : 1.0;
  for (int k = 0; k < 2; ++k) span_res = std::max(span_res, containment_residual(derived, H.basis.col(k)));
  for (int k = 0; k < derived.dim(); ++k)
    span_res = std::max(span_res, containment_residual(H, derived.basis.col(k)));
  c.derived_span_residual = span_res;

  c.curvature = survey_sectional(CurvatureTensor(T), 500, seed);
  const double target = -c.alpha * c.alpha;
  c.curvature_value_residual = std::max(std::abs(c.curvature.min - target), std::abs(c.curvature.max - target));
  c.pass = c.adjoint_residual < 1e-8 && c.horizontal_bracket < 1e-8 && c.derived_span_residual < 1e-8 &&
           c.curvature.constant && c.curvature_value_residual < 1e-7;
  return c;
}

}  // namespace lieharm
