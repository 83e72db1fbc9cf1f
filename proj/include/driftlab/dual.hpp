#ifndef DRIFTLAB_DUAL_HPP
#define DRIFTLAB_DUAL_HPP

#include <cmath>

#include <Eigen/Dense>

namespace driftlab::ad {

// Forward-mode scalar carrying N partial derivatives. The dynamics are
// templated on the scalar type, so Jacobians come from evaluating them once
// with Dual inputs seeded on the coordinate directions.
template <int N>
struct Dual {
  double v = 0.0;
  Eigen::Matrix<double, N, 1> d = Eigen::Matrix<double, N, 1>::Zero();

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit constants
  static Dual seed(double value, int k) {
    Dual x(value);
    x.d[k] = 1.0;
    return x;
  }

  Dual operator-() const {
    Dual r(-v);
    r.d = -d;
    return r;
  }
  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
};

template <int N>
Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <int N>
Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }

template <int N>
Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
  Dual<N> r(a.v * b.v);
  r.d = a.d * b.v + b.d * a.v;
  return r;
}

template <int N>
Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
  Dual<N> r(a.v / b.v);
  r.d = (a.d - r.v * b.d) / b.v;
  return r;
}

template <int N>
Dual<N> operator+(Dual<N> a, double b) { a.v += b; return a; }
template <int N>
Dual<N> operator+(double a, Dual<N> b) { b.v += a; return b; }
template <int N>
Dual<N> operator-(Dual<N> a, double b) { a.v -= b; return a; }
template <int N>
Dual<N> operator-(double a, const Dual<N>& b) { return -b + a; }
template <int N>
Dual<N> operator*(Dual<N> a, double b) {
  a.v *= b;
  a.d *= b;
  return a;
}
template <int N>
Dual<N> operator*(double a, Dual<N> b) { return b * a; }
template <int N>
Dual<N> operator/(Dual<N> a, double b) { return a * (1.0 / b); }
template <int N>
Dual<N> operator/(double a, const Dual<N>& b) { return Dual<N>(a) / b; }

template <int N> bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.v < b.v; }
template <int N> bool operator>(const Dual<N>& a, const Dual<N>& b) { return a.v > b.v; }
template <int N> bool operator<=(const Dual<N>& a, const Dual<N>& b) { return a.v <= b.v; }
template <int N> bool operator>=(const Dual<N>& a, const Dual<N>& b) { return a.v >= b.v; }
template <int N> bool operator<(const Dual<N>& a, double b) { return a.v < b; }
template <int N> bool operator>(const Dual<N>& a, double b) { return a.v > b; }
template <int N> bool operator<=(const Dual<N>& a, double b) { return a.v <= b; }
template <int N> bool operator>=(const Dual<N>& a, double b) { return a.v >= b; }

template <int N>
Dual<N> sin(const Dual<N>& a) {
  Dual<N> r(std::sin(a.v));
  r.d = std::cos(a.v) * a.d;
  return r;
}
template <int N>
Dual<N> cos(const Dual<N>& a) {
  Dual<N> r(std::cos(a.v));
  r.d = -std::sin(a.v) * a.d;
  return r;
}
template <int N>
Dual<N> tanh(const Dual<N>& a) {
  double t = std::tanh(a.v);
  Dual<N> r(t);
  r.d = (1.0 - t * t) * a.d;
  return r;
}
template <int N>
Dual<N> sqrt(const Dual<N>& a) {
  double s = std::sqrt(a.v);
  Dual<N> r(s);
  r.d = a.d / (2.0 * s);
  return r;
}
template <int N>
Dual<N> atan2(const Dual<N>& y, const Dual<N>& x) {
  Dual<N> r(std::atan2(y.v, x.v));
  double den = x.v * x.v + y.v * y.v;
  r.d = (x.v * y.d - y.v * x.d) / den;
  return r;
}
template <int N>
Dual<N> abs(const Dual<N>& a) {
  return a.v < 0.0 ? -a : a;
}
template <int N>
Dual<N> max(const Dual<N>& a, const Dual<N>& b) {
  return a.v >= b.v ? a : b;
}
template <int N>
Dual<N> min(const Dual<N>& a, const Dual<N>& b) {
  return a.v <= b.v ? a : b;
}

// Plain-double fallbacks so templated code can call these unqualified.
inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) { return x.v; }

}  // namespace driftlab::ad

#endif  // DRIFTLAB_DUAL_HPP
