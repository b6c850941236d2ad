#include "lieharm/field.hpp"

#include "lieharm/error.hpp"

#include <sstream>
#include <string>
#include <variant>

namespace lieharm {

namespace {

struct Constant {
  double c;
};
struct Entry {
  int i, j;
};
struct LogDiag {
  int i;
};
struct Linear {
  Eigen::VectorXd weights;
  std::vector<ScalarField> parts;
};
struct Product {
  ScalarField a, b;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void check_index(const Eigen::MatrixXd& p, int i, int j) {
  if (i < 0 || j < 0 || i >= p.rows() || j >= p.cols())
    throw InputError("field refers to entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                     ") outside a " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) +
                     " matrix");
}

}  // namespace

struct ScalarField::Node {
  std::variant<Constant, Entry, LogDiag, Linear, Product> kind;
};

ScalarField ScalarField::constant(double c) {
  return ScalarField(std::make_shared<const Node>(Node{Constant{c}}));
}

ScalarField ScalarField::entry(int i, int j) {
  if (i < 0 || j < 0) throw InputError("entry field indices must be non-negative");
  return ScalarField(std::make_shared<const Node>(Node{Entry{i, j}}));
}

ScalarField ScalarField::log_diag(int i) {
  if (i < 0) throw InputError("log_diag field index must be non-negative");
  return ScalarField(std::make_shared<const Node>(Node{LogDiag{i}}));
}

ScalarField ScalarField::linear(const Eigen::VectorXd& weights, std::vector<ScalarField> parts) {
  if (weights.size() != static_cast<Eigen::Index>(parts.size()))
    throw InputError("linear field: weight count does not match part count");
  if (!weights.allFinite()) throw InputError("linear field: weights must be finite");
  // drop vanishing terms
  std::vector<double> w;
  std::vector<ScalarField> kept;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const double wk = weights(static_cast<Eigen::Index>(k));
    if (wk != 0.0 && !parts[k].is_zero()) {
      w.push_back(wk);
      kept.push_back(std::move(parts[k]));
    }
  }
  if (kept.empty()) return constant(0.0);
  if (kept.size() == 1 && w[0] == 1.0) return kept[0];
  return ScalarField(std::make_shared<const Node>(
      Node{Linear{Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())),
                  std::move(kept)}}));
}

ScalarField ScalarField::product(ScalarField a, ScalarField b) {
  if (a.is_zero() || b.is_zero()) return constant(0.0);
  return ScalarField(std::make_shared<const Node>(Node{Product{std::move(a), std::move(b)}}));
}

bool ScalarField::is_zero() const {
  if (const auto* c = std::get_if<Constant>(&node_->kind)) return c->c == 0.0;
  return false;
}

Jet2<double> ScalarField::eval(const CurveJet& c) const {
  return std::visit(
      [&](const auto& k) -> Jet2<double> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return Jet2<double>::constant(k.c);
        } else if constexpr (std::is_same_v<K, Entry>) {
          check_index(c.value, k.i, k.j);
          return {c.value(k.i, k.j), c.d1(k.i, k.j), c.d2(k.i, k.j)};
        } else if constexpr (std::is_same_v<K, LogDiag>) {
          check_index(c.value, k.i, k.i);
          const Jet2<double> x{c.value(k.i, k.i), c.d1(k.i, k.i), c.d2(k.i, k.i)};
          if (!(x.v > 0.0))
            throw DomainError("log of non-positive diagonal entry " + std::to_string(k.i + 1));
          return log(x);
        } else if constexpr (std::is_same_v<K, Linear>) {
          Jet2<double> sum;
          for (std::size_t n = 0; n < k.parts.size(); ++n)
            sum += k.weights(static_cast<Eigen::Index>(n)) * k.parts[n].eval(c);
          return sum;
        } else {
          return k.a.eval(c) * k.b.eval(c);
        }
      },
      node_->kind);
}

std::string ScalarField::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return fmt(k.c);
        } else if constexpr (std::is_same_v<K, Entry>) {
          return "x" + std::to_string(k.i + 1) + "_" + std::to_string(k.j + 1);
        } else if constexpr (std::is_same_v<K, LogDiag>) {
          return "t" + std::to_string(k.i + 1);
        } else if constexpr (std::is_same_v<K, Linear>) {
          std::string s;
          for (std::size_t n = 0; n < k.parts.size(); ++n) {
            const double w = k.weights(static_cast<Eigen::Index>(n));
            if (n > 0) s += w < 0 ? " - " : " + ";
            else if (w < 0) s += "-";
            const double aw = std::abs(w);
            if (aw != 1.0) s += fmt(aw) + "*";
            s += k.parts[n].describe();
          }
          return "(" + s + ")";
        } else {
          return k.a.describe() + "*" + k.b.describe();
        }
      },
      node_->kind);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField::linear(Eigen::Vector2d(1.0, 1.0), {a, b});
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField::linear(Eigen::Vector2d(1.0, -1.0), {a, b});
}
ScalarField operator*(double c, const ScalarField& a) {
  return ScalarField::linear(Eigen::VectorXd::Constant(1, c), {a});
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) { return ScalarField::product(a, b); }

ComplexField ComplexField::pair(const Eigen::VectorXcd& v, const std::vector<ScalarField>& parts) {
  if (v.size() != static_cast<Eigen::Index>(parts.size()))
    throw InputError("pairing vector length does not match the number of components");
  return {ScalarField::linear(v.real(), parts), ScalarField::linear(v.imag(), parts)};
}

Jet2<std::complex<double>> ComplexField::eval(const CurveJet& c) const {
  const Jet2<double> r = re.eval(c);
  const Jet2<double> i = im.eval(c);
  using C = std::complex<double>;
  return {C(r.v, i.v), C(r.d1, i.d1), C(r.d2, i.d2)};
}

std::string ComplexField::describe() const {
  if (im.is_zero()) return re.describe();
  if (re.is_zero()) return "i*" + im.describe();
  return re.describe() + " + i*" + im.describe();
}

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexField operator*(std::complex<double> c, const ComplexField& a) {
  return {ScalarField::linear(Eigen::Vector2d(c.real(), -c.imag()), {a.re, a.im}),
          ScalarField::linear(Eigen::Vector2d(c.imag(), c.real()), {a.re, a.im})};
}

ComplexField operator*(const ComplexField& a, const ComplexField& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

std::complex<double> ComplexPolynomial::operator()(const Eigen::VectorXcd& z) const {
  if (z.size() != variables) throw InputError("polynomial evaluated with wrong number of variables");
  std::complex<double> sum = 0.0;
  for (const auto& t : terms) {
    std::complex<double> m = t.coeff;
    for (int k = 0; k < variables; ++k) m *= std::pow(z(k), t.powers[static_cast<std::size_t>(k)]);
    sum += m;
  }
  return sum;
}

int ComplexPolynomial::degree() const {
  int d = 0;
  for (const auto& t : terms) {
    int s = 0;
    for (int p : t.powers) s += p;
    d = std::max(d, s);
  }
  return d;
}

ComplexField holomorphic_post(const ComplexPolynomial& F, const std::vector<ComplexField>& family) {
  if (F.variables != static_cast<int>(family.size()))
    throw InputError("holomorphic_post: polynomial arity does not match family size");
  ComplexField result = ComplexField::constant(0.0);
  for (const auto& t : F.terms) {
    if (static_cast<int>(t.powers.size()) != F.variables)
      throw InputError("holomorphic_post: monomial has wrong number of exponents");
    if (t.coeff == 0.0) continue;
    ComplexField mono = ComplexField::constant(1.0);
    bool first = true;
    for (int k = 0; k < F.variables; ++k) {
      const int p = t.powers[static_cast<std::size_t>(k)];
      if (p < 0) throw InputError("holomorphic_post: negative exponent");
      for (int e = 0; e < p; ++e) {
        mono = first ? family[static_cast<std::size_t>(k)] : mono * family[static_cast<std::size_t>(k)];
        first = false;
      }
    }
    result = result + t.coeff * mono;
  }
  return result;
}

}  // namespace lieharm
