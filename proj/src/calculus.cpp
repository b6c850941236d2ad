#include "lieharm/calculus.hpp"

#include "lieharm/error.hpp"

#include <algorithm>
#include <cmath>

namespace lieharm {

namespace {

void check_point(const MatrixRealization& R, const GroupPoint& p) {
  if (p.matrix.rows() != R.ambient() || p.matrix.cols() != R.ambient())
    throw InputError("group point does not match the realization's matrix size");
}

template <typename Field>
auto jets_along_frame(const Field& phi, const LeftInvariantFrame& F, const GroupPoint& p) {
  check_point(F.realization(), p);
  std::vector<decltype(phi.eval(CurveJet::at(p.matrix)))> out;
  out.reserve(F.onb_matrices().size());
  for (const auto& X : F.onb_matrices()) out.push_back(phi.eval(CurveJet::along(p.matrix, X)));
  return out;
}

template <typename Field>
auto laplacian_impl(const Field& phi, const LeftInvariantFrame& F, const GroupPoint& p) {
  const auto jets = jets_along_frame(phi, F, p);
  decltype(jets.front().d2) sum{};
  for (const auto& j : jets) sum += j.d2;
  sum -= phi.eval(CurveJet::along(p.matrix, F.mean_connection_matrix())).d1;
  return sum;
}

}  // namespace

LeftInvariantFrame::LeftInvariantFrame(MatrixRealization R)
    : LeftInvariantFrame(R, R.algebra().frame()) {}

LeftInvariantFrame::LeftInvariantFrame(MatrixRealization R, Eigen::MatrixXd onb)
    : R_(std::move(R)), onb_(std::move(onb)), table_(koszul(R_.algebra(), onb_)) {
  onb_mats_.reserve(static_cast<std::size_t>(onb_.cols()));
  for (int a = 0; a < onb_.cols(); ++a) onb_mats_.push_back(R_.to_matrix(onb_.col(a)));
  mean_conn_ = R_.to_matrix(table_.to_declared(table_.mean_connection()));
}

Derivs<double> derivs(const ScalarField& phi, const MatrixRealization& R, const GroupPoint& p,
                      const Eigen::VectorXd& X) {
  check_point(R, p);
  const Jet2<double> j = phi.eval(CurveJet::along(p.matrix, R.to_matrix(X)));
  return {j.d1, j.d2};
}

Derivs<std::complex<double>> derivs(const ComplexField& phi, const MatrixRealization& R,
                                    const GroupPoint& p, const Eigen::VectorXd& X) {
  check_point(R, p);
  const auto j = phi.eval(CurveJet::along(p.matrix, R.to_matrix(X)));
  return {j.d1, j.d2};
}

Derivs<double> fd_check(const ScalarField& phi, const MatrixRealization& R, const GroupPoint& p,
                        const Eigen::VectorXd& X, double h) {
  if (!(h > 0.0)) throw InputError("fd_check: step must be positive");
  check_point(R, p);
  const Eigen::MatrixXd M = R.to_matrix(X);
  const double fp = phi.value(p.matrix * exp_matrix(M, h));
  const double f0 = phi.value(p.matrix);
  const double fm = phi.value(p.matrix * exp_matrix(M, -h));
  return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

double kappa(const ScalarField& phi, const ScalarField& psi, const LeftInvariantFrame& F,
             const GroupPoint& p) {
  const auto a = jets_along_frame(phi, F, p);
  const auto b = jets_along_frame(psi, F, p);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k].d1 * b[k].d1;
  return sum;
}

std::complex<double> kappa(const ComplexField& phi, const ComplexField& psi,
                           const LeftInvariantFrame& F, const GroupPoint& p) {
  const auto a = jets_along_frame(phi, F, p);
  const auto b = jets_along_frame(psi, F, p);
  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k].d1 * b[k].d1;
  return sum;
}

double laplacian(const ScalarField& phi, const LeftInvariantFrame& F, const GroupPoint& p) {
  return laplacian_impl(phi, F, p);
}

std::complex<double> laplacian(const ComplexField& phi, const LeftInvariantFrame& F,
                               const GroupPoint& p) {
  return laplacian_impl(phi, F, p);
}

FamilyReport verify_family(const std::vector<ComplexField>& family, const LeftInvariantFrame& F,
                           const std::vector<GroupPoint>& points, double tol) {
  FamilyReport r;
  r.fields = static_cast<int>(family.size());
  r.points = static_cast<int>(points.size());
  r.tol = tol;
  r.max_tau.assign(family.size(), 0.0);
  r.max_kappa = Eigen::MatrixXd::Zero(r.fields, r.fields);
  if (family.empty()) r.warnings.emplace_back("empty family");
  if (points.empty()) r.warnings.emplace_back("no sample points: check is vacuous");

  for (const auto& p : points) {
    std::vector<std::vector<Jet2<std::complex<double>>>> jets;
    jets.reserve(family.size());
    for (std::size_t k = 0; k < family.size(); ++k) {
      jets.push_back(jets_along_frame(family[k], F, p));
      r.max_tau[k] = std::max(r.max_tau[k], std::abs(laplacian(family[k], F, p)));
    }
    for (int k = 0; k < r.fields; ++k)
      for (int l = k; l < r.fields; ++l) {
        std::complex<double> s = 0.0;
        for (int a = 0; a < F.dim(); ++a) s += jets[k][a].d1 * jets[l][a].d1;
        r.max_kappa(k, l) = std::max(r.max_kappa(k, l), std::abs(s));
        r.max_kappa(l, k) = r.max_kappa(k, l);
      }
  }
  for (double t : r.max_tau) r.worst_tau = std::max(r.worst_tau, t);
  if (r.fields > 0) r.worst_kappa = r.max_kappa.maxCoeff();
  r.pass = r.worst_tau < tol && r.worst_kappa < tol;
  return r;
}

}  // namespace lieharm
