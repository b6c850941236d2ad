#pragma once

#include <cmath>
#include <complex>

namespace lieharm {

/// Second-order jet of a scalar along a curve s -> c(s): value, d/ds and
/// d^2/ds^2 at s = 0.  Arithmetic applies the chain and product rules, e.g.
/// (fg)'' = f''g + 2f'g' + fg''.
template <typename Scalar>
struct Jet2 {
  Scalar v{};
  Scalar d1{};
  Scalar d2{};

  static Jet2 constant(Scalar c) { return {c, Scalar(0), Scalar(0)}; }

  Jet2& operator+=(const Jet2& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  Jet2& operator*=(Scalar c) {
    v *= c;
    d1 *= c;
    d2 *= c;
    return *this;
  }
};

template <typename S>
Jet2<S> operator+(Jet2<S> a, const Jet2<S>& b) {
  return a += b;
}
template <typename S>
Jet2<S> operator-(Jet2<S> a, const Jet2<S>& b) {
  return a -= b;
}
template <typename S>
Jet2<S> operator-(const Jet2<S>& a) {
  return {-a.v, -a.d1, -a.d2};
}
template <typename S>
Jet2<S> operator*(S c, Jet2<S> a) {
  return a *= c;
}
template <typename S>
Jet2<S> operator*(Jet2<S> a, S c) {
  return a *= c;
}
template <typename S>
Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + S(2) * a.d1 * b.d1 + a.v * b.d2};
}
template <typename S>
Jet2<S> reciprocal(const Jet2<S>& a) {
  const S inv = S(1) / a.v;
  return {inv, -a.d1 * inv * inv, (S(2) * a.d1 * a.d1 * inv - a.d2) * inv * inv};
}
template <typename S>
Jet2<S> operator/(const Jet2<S>& a, const Jet2<S>& b) {
  return a * reciprocal(b);
}
template <typename S>
Jet2<S> log(const Jet2<S>& a) {
  using std::log;
  const S inv = S(1) / a.v;
  return {log(a.v), a.d1 * inv, a.d2 * inv - a.d1 * a.d1 * inv * inv};
}
template <typename S>
Jet2<S> exp(const Jet2<S>& a) {
  using std::exp;
  const S e = exp(a.v);
  return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}

}  // namespace lieharm
