#include "lieharm/matrix_group.hpp"

#include <algorithm>
#include <string>

namespace lieharm {

MatrixRealization::MatrixRealization(LieAlgebra algebra, std::vector<Eigen::MatrixXd> rep)
    : algebra_(std::move(algebra)), rep_(std::move(rep)) {
  if (static_cast<int>(rep_.size()) != algebra_.dim())
    throw InputError("realization must assign one matrix per basis vector");
  const auto N = rep_.front().rows();
  Eigen::MatrixXd flat(N * N, rep_.size());
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    if (rep_[i].rows() != N || rep_[i].cols() != N)
      throw InputError("realization matrices must all be square of the same size");
    flat.col(static_cast<Eigen::Index>(i)) = rep_[i].reshaped();
  }
  if (Subspace::span(flat).dim() != algebra_.dim())
    throw InputError("realization matrices are linearly dependent");
}

Eigen::MatrixXd MatrixRealization::to_matrix(const Eigen::VectorXd& x) const {
  if (x.size() != algebra_.dim()) throw InputError("to_matrix: wrong vector length");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ambient(), ambient());
  for (int i = 0; i < algebra_.dim(); ++i)
    if (x(i) != 0.0) m += x(i) * rep_[i];
  return m;
}

double MatrixRealization::homomorphism_residual() const {
  const int d = algebra_.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Eigen::MatrixXd comm = rep_[i] * rep_[j] - rep_[j] * rep_[i];
      const Eigen::MatrixXd image = to_matrix(algebra_.ad(i).col(j));
      worst = std::max(worst, (comm - image).cwiseAbs().maxCoeff());
    }
  return worst;
}

double MatrixRealization::trace_metric_residual() const {
  const int d = algebra_.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      worst = std::max(worst, std::abs((rep_[i] * rep_[j].transpose()).trace() -
                                       algebra_.gram()(i, j)));
  return worst;
}

MatrixRealization realization_from_matrices(std::vector<Eigen::MatrixXd> matrices,
                                            std::optional<Eigen::MatrixXd> gram) {
  const int d = static_cast<int>(matrices.size());
  if (d == 0) throw InputError("realization_from_matrices: no matrices");
  const auto N = matrices.front().rows();
  Eigen::MatrixXd flat(N * N, d);
  for (int i = 0; i < d; ++i) flat.col(i) = matrices[i].reshaped();
  const auto qr = flat.colPivHouseholderQr();
  if (qr.rank() != d) throw ConstructionError("realization_from_matrices: matrices are dependent");

  std::vector<Eigen::MatrixXd> ad(d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Eigen::MatrixXd comm = matrices[i] * matrices[j] - matrices[j] * matrices[i];
      const Eigen::VectorXd target = comm.reshaped();
      const Eigen::VectorXd coeffs = qr.solve(target);
      if ((flat * coeffs - target).norm() > 1e-10 * std::max(1.0, target.norm()))
        throw ConstructionError("realization_from_matrices: span is not closed under commutators (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
      ad[i].col(j) = coeffs;
      ad[j].col(i) = -coeffs;
    }

  Eigen::MatrixXd G(d, d);
  if (gram) {
    G = *gram;
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) G(i, j) = (matrices[i] * matrices[j].transpose()).trace();
  }
  return MatrixRealization(LieAlgebra(std::move(ad), std::move(G)), std::move(matrices));
}

std::vector<GroupPoint> sample_points(const MatrixRealization& R, int count, std::uint64_t seed,
                                      double scale) {
  if (count < 1) throw InputError("sample_points: count must be at least 1");
  Rng rng(seed);
  const int d = R.algebra().dim();
  std::vector<GroupPoint> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int p = 0; p < count; ++p) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(R.ambient(), R.ambient());
    for (int i = 0; i < d; ++i) {
      const double v = rng.uniform(-scale, scale);
      if (v != 0.0) g = g * exp_matrix(R.rep()[i], v);
    }
    points.push_back({std::move(g)});
  }
  return points;
}

}  // namespace lieharm
