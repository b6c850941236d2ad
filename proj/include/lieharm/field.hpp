#pragma once

#include "lieharm/jet.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace lieharm {

/// Exact 2-jet of the curve s -> p exp(sX) = p (I + sX + s^2 X^2 / 2) + O(s^3).
struct CurveJet {
  Eigen::MatrixXd value;  // p
  Eigen::MatrixXd d1;     // p X
  Eigen::MatrixXd d2;     // p X^2

  static CurveJet along(const Eigen::MatrixXd& p, const Eigen::MatrixXd& X) {
    const Eigen::MatrixXd pX = p * X;
    return {p, pX, pX * X};
  }
  static CurveJet at(const Eigen::MatrixXd& p) {
    return {p, Eigen::MatrixXd::Zero(p.rows(), p.cols()), Eigen::MatrixXd::Zero(p.rows(), p.cols())};
  }
};

/// Real-valued function on a matrix group, built as an immutable expression
/// tree over matrix entries and logs of diagonal entries.  Copies share nodes.
class ScalarField {
 public:
  struct Node;

  static ScalarField constant(double c);
  /// x_ij : p -> p(i, j), 0-based.
  static ScalarField entry(int i, int j);
  /// t_i : p -> log p(i, i), 0-based.
  static ScalarField log_diag(int i);
  /// sum_k weights(k) * parts[k]
  static ScalarField linear(const Eigen::VectorXd& weights, std::vector<ScalarField> parts);
  static ScalarField product(ScalarField a, ScalarField b);

  Jet2<double> eval(const CurveJet& c) const;
  double value(const Eigen::MatrixXd& p) const { return eval(CurveJet::at(p)).v; }

  /// Known to be identically zero (a zero constant or an empty combination).
  bool is_zero() const;
  std::string describe() const;

 private:
  explicit ScalarField(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);
ScalarField operator*(const ScalarField& a, const ScalarField& b);

/// Complex-valued field stored as its real and imaginary parts.
struct ComplexField {
  ScalarField re = ScalarField::constant(0.0);
  ScalarField im = ScalarField::constant(0.0);

  static ComplexField real(ScalarField f) { return {std::move(f), ScalarField::constant(0.0)}; }
  static ComplexField constant(std::complex<double> c) {
    return {ScalarField::constant(c.real()), ScalarField::constant(c.imag())};
  }
  /// (Phi, v) = sum_k v_k parts[k], the symmetric (not Hermitian) pairing.
  static ComplexField pair(const Eigen::VectorXcd& v, const std::vector<ScalarField>& parts);

  Jet2<std::complex<double>> eval(const CurveJet& c) const;
  std::complex<double> value(const Eigen::MatrixXd& p) const { return eval(CurveJet::at(p)).v; }
  std::string describe() const;
};

ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator*(std::complex<double> c, const ComplexField& a);
ComplexField operator*(const ComplexField& a, const ComplexField& b);

/// Polynomial in several complex variables: sum of coeff * prod_k z_k^powers[k].
struct ComplexPolynomial {
  struct Term {
    std::complex<double> coeff;
    std::vector<int> powers;
  };
  int variables = 0;
  std::vector<Term> terms;

  std::complex<double> operator()(const Eigen::VectorXcd& z) const;
  int degree() const;
};

/// F(phi_1, ..., phi_n) for a polynomial F.
ComplexField holomorphic_post(const ComplexPolynomial& F, const std::vector<ComplexField>& family);

}  // namespace lieharm
