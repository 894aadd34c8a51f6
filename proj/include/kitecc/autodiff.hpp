#pragma once

// Forward-mode AD over arbitrary scalars (double, Interval, or nested AD
// types). Every system function is written once against a generic scalar;
// instantiating with Dual gives rigorous Jacobian enclosures, with TaylorJet
// rigorous directional Taylor coefficients up to order 3. Nesting
// Dual<Dual<...>> yields higher mixed derivatives.
//
// Chain terms with an exactly-zero tangent are short-circuited before any
// division, so differentiating through sqrt(c) of a constant never divides
// by a zero-straddling interval.

#include <array>
#include <type_traits>
#include <vector>

#include "kitecc/box.hpp"
#include "kitecc/interval.hpp"

namespace kitecc {

template <class S, int N>
struct Dual {
  S v;
  std::array<S, N> d;

  Dual() : v(0.0) { d.fill(S(0.0)); }
  Dual(double x) : v(x) { d.fill(S(0.0)); }
  explicit Dual(const S& val)
    requires(!std::is_same_v<S, double>)
      : v(val) {
    d.fill(S(0.0));
  }
  static Dual var(const S& val, int index) {
    Dual r(val);
    r.d[index] = S(1.0);
    return r;
  }
};

template <class S, int N>
Dual<S, N> operator-(const Dual<S, N>& a) {
  Dual<S, N> r(-a.v);
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <class S, int N>
Dual<S, N> operator+(const Dual<S, N>& a, const Dual<S, N>& b) {
  Dual<S, N> r(a.v + b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}
template <class S, int N>
Dual<S, N> operator-(const Dual<S, N>& a, const Dual<S, N>& b) {
  Dual<S, N> r(a.v - b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}
template <class S, int N>
Dual<S, N> operator*(const Dual<S, N>& a, const Dual<S, N>& b) {
  Dual<S, N> r(a.v * b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}
template <class S, int N>
Dual<S, N> operator/(const Dual<S, N>& a, const Dual<S, N>& b) {
  Dual<S, N> r(a.v / b.v);
  for (int i = 0; i < N; ++i) {
    if (is_exact_zero(a.d[i]) && is_exact_zero(b.d[i]))
      r.d[i] = S(0.0);
    else
      r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
  }
  return r;
}

template <class S, int N>
Dual<S, N> operator+(const Dual<S, N>& a, double b) { return a + Dual<S, N>(b); }
template <class S, int N>
Dual<S, N> operator+(double a, const Dual<S, N>& b) { return Dual<S, N>(a) + b; }
template <class S, int N>
Dual<S, N> operator-(const Dual<S, N>& a, double b) { return a - Dual<S, N>(b); }
template <class S, int N>
Dual<S, N> operator-(double a, const Dual<S, N>& b) { return Dual<S, N>(a) - b; }
template <class S, int N>
Dual<S, N> operator*(const Dual<S, N>& a, double b) {
  Dual<S, N> r(a.v * S(b));
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * S(b);
  return r;
}
template <class S, int N>
Dual<S, N> operator*(double a, const Dual<S, N>& b) { return b * a; }
template <class S, int N>
Dual<S, N> operator/(const Dual<S, N>& a, double b) {
  Dual<S, N> r(a.v / S(b));
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / S(b);
  return r;
}
template <class S, int N>
Dual<S, N> operator/(double a, const Dual<S, N>& b) { return Dual<S, N>(a) / b; }

template <class S, int N>
Dual<S, N> sqrt(const Dual<S, N>& a) {
  Dual<S, N> r;
  r.v = sqrt(a.v);
  S two_r = S(2.0) * r.v;
  for (int i = 0; i < N; ++i) {
    if (is_exact_zero(a.d[i]))
      r.d[i] = S(0.0);
    else
      r.d[i] = a.d[i] / two_r;
  }
  return r;
}

template <class S, int N>
Dual<S, N> pow_int(const Dual<S, N>& a, int n) {
  if (n == 0) return Dual<S, N>(1.0);
  Dual<S, N> r;
  r.v = pow_int(a.v, n);
  S chain = double(n) * pow_int(a.v, n - 1);
  for (int i = 0; i < N; ++i) r.d[i] = chain * a.d[i];
  return r;
}

template <class S, int N>
bool is_exact_zero(const Dual<S, N>& a) {
  if (!is_exact_zero(a.v)) return false;
  for (int i = 0; i < N; ++i)
    if (!is_exact_zero(a.d[i])) return false;
  return true;
}

template <class S, int N>
double midpoint_of(const Dual<S, N>& a) { return midpoint_of(a.v); }

// Truncated Taylor series of fixed degree 3 in one direction parameter t:
// coeffs[k] encloses (1/k!) d^k/dt^k of the expression. Degree 3 is exactly
// what third-order bifurcation tests need.
template <class S>
struct TaylorJet {
  std::array<S, 4> c;

  TaylorJet() { c.fill(S(0.0)); }
  TaylorJet(double x) {
    c.fill(S(0.0));
    c[0] = S(x);
  }
  explicit TaylorJet(const S& val)
    requires(!std::is_same_v<S, double>)
  {
    c.fill(S(0.0));
    c[0] = val;
  }
  static TaylorJet line(const S& x0, const S& dir) {
    TaylorJet r(x0);
    r.c[1] = dir;
    return r;
  }
};

template <class S>
TaylorJet<S> operator-(const TaylorJet<S>& a) {
  TaylorJet<S> r;
  for (int k = 0; k < 4; ++k) r.c[k] = -a.c[k];
  return r;
}
template <class S>
TaylorJet<S> operator+(const TaylorJet<S>& a, const TaylorJet<S>& b) {
  TaylorJet<S> r;
  for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}
template <class S>
TaylorJet<S> operator-(const TaylorJet<S>& a, const TaylorJet<S>& b) {
  TaylorJet<S> r;
  for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}
template <class S>
TaylorJet<S> operator*(const TaylorJet<S>& a, const TaylorJet<S>& b) {
  TaylorJet<S> r;
  for (int k = 0; k < 4; ++k) {
    S acc = S(0.0);
    for (int i = 0; i <= k; ++i) acc += a.c[i] * b.c[k - i];
    r.c[k] = acc;
  }
  return r;
}
template <class S>
TaylorJet<S> operator/(const TaylorJet<S>& a, const TaylorJet<S>& b) {
  bool higher_zero = is_exact_zero(a.c[1]) && is_exact_zero(a.c[2]) &&
                     is_exact_zero(a.c[3]) && is_exact_zero(b.c[1]) &&
                     is_exact_zero(b.c[2]) && is_exact_zero(b.c[3]);
  TaylorJet<S> r;
  r.c[0] = a.c[0] / b.c[0];
  if (higher_zero) return r;
  for (int k = 1; k < 4; ++k) {
    S acc = a.c[k];
    for (int i = 0; i < k; ++i) acc -= r.c[i] * b.c[k - i];
    r.c[k] = is_exact_zero(acc) ? S(0.0) : acc / b.c[0];
  }
  return r;
}

template <class S>
TaylorJet<S> operator+(const TaylorJet<S>& a, double b) { return a + TaylorJet<S>(b); }
template <class S>
TaylorJet<S> operator+(double a, const TaylorJet<S>& b) { return TaylorJet<S>(a) + b; }
template <class S>
TaylorJet<S> operator-(const TaylorJet<S>& a, double b) { return a - TaylorJet<S>(b); }
template <class S>
TaylorJet<S> operator-(double a, const TaylorJet<S>& b) { return TaylorJet<S>(a) - b; }
template <class S>
TaylorJet<S> operator*(const TaylorJet<S>& a, double b) {
  TaylorJet<S> r;
  for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] * S(b);
  return r;
}
template <class S>
TaylorJet<S> operator*(double a, const TaylorJet<S>& b) { return b * a; }
template <class S>
TaylorJet<S> operator/(const TaylorJet<S>& a, double b) {
  TaylorJet<S> r;
  for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] / S(b);
  return r;
}
template <class S>
TaylorJet<S> operator/(double a, const TaylorJet<S>& b) {
  return TaylorJet<S>(a) / b;
}

template <class S>
TaylorJet<S> sqrt(const TaylorJet<S>& a) {
  TaylorJet<S> r;
  r.c[0] = sqrt(a.c[0]);
  if (is_exact_zero(a.c[1]) && is_exact_zero(a.c[2]) && is_exact_zero(a.c[3]))
    return r;
  S two_r = S(2.0) * r.c[0];
  r.c[1] = a.c[1] / two_r;
  r.c[2] = (a.c[2] - r.c[1] * r.c[1]) / two_r;
  r.c[3] = (a.c[3] - 2.0 * (r.c[1] * r.c[2])) / two_r;
  return r;
}

template <class S>
TaylorJet<S> pow_int(const TaylorJet<S>& a, int n) {
  if (n == 0) return TaylorJet<S>(1.0);
  if (n < 0) return 1.0 / pow_int(a, -n);
  TaylorJet<S> acc(1.0), base = a;
  unsigned un = static_cast<unsigned>(n);
  while (un) {
    if (un & 1) acc = acc * base;
    un >>= 1;
    if (un) base = base * base;
  }
  return acc;
}

template <class S>
bool is_exact_zero(const TaylorJet<S>& a) {
  for (int k = 0; k < 4; ++k)
    if (!is_exact_zero(a.c[k])) return false;
  return true;
}

template <class S>
double midpoint_of(const TaylorJet<S>& a) { return midpoint_of(a.c[0]); }

// Constant promotion into any scalar type in the tower.
template <class S>
struct Promote {
  template <class T>
  static S from(const T& v) { return S(v); }
};
template <class S, int N>
struct Promote<Dual<S, N>> {
  template <class T>
  static Dual<S, N> from(const T& v) { return Dual<S, N>(Promote<S>::from(v)); }
};
template <class S>
struct Promote<TaylorJet<S>> {
  template <class T>
  static TaylorJet<S> from(const T& v) {
    return TaylorJet<S>(Promote<S>::from(v));
  }
};

template <class S, class T>
S promote(const T& v) { return Promote<S>::from(v); }

// Parameter injection into any scalar of the tower. Interval-based towers
// keep the full enclosure; double-based towers collapse to the midpoint and
// are only used on approximate paths (predictors, preconditioner seeds).
template <class S>
struct ParamCast {
  static S from(const Interval& x) { return S(x); }
};
template <>
struct ParamCast<double> {
  static double from(const Interval& x) { return x.mid(); }
};
template <class S, int N>
struct ParamCast<Dual<S, N>> {
  static Dual<S, N> from(const Interval& x) {
    return Dual<S, N>(ParamCast<S>::from(x));
  }
};
template <class S>
struct ParamCast<TaylorJet<S>> {
  static TaylorJet<S> from(const Interval& x) {
    return TaylorJet<S>(ParamCast<S>::from(x));
  }
};

template <class S>
S param_cast(const Interval& x) { return ParamCast<S>::from(x); }

// ---- drivers ----
//
// A system is a functor with static constexpr int kIn, kOut and a call
// operator templated on the scalar: array<S,kOut> operator()(array<S,kIn>).

template <class F>
Box eval_range(const F& f, const Box& box) {
  std::array<Interval, F::kIn> in;
  for (int i = 0; i < F::kIn; ++i) in[i] = box[i];
  auto out = f(in);
  Box r(F::kOut);
  for (int i = 0; i < F::kOut; ++i) r[i] = out[i];
  return r;
}

template <class F>
Box eval_thin(const F& f, const Eigen::VectorXd& x) {
  std::array<Interval, F::kIn> in;
  for (int i = 0; i < F::kIn; ++i) in[i] = Interval(x[i]);
  auto out = f(in);
  Box r(F::kOut);
  for (int i = 0; i < F::kOut; ++i) r[i] = out[i];
  return r;
}

// Entry (i,j) encloses df_i/dx_j over the whole box.
template <class F>
IntervalMatrix jacobian(const F& f, const Box& box) {
  using D = Dual<Interval, F::kIn>;
  std::array<D, F::kIn> in;
  for (int i = 0; i < F::kIn; ++i) in[i] = D::var(box[i], i);
  auto out = f(in);
  IntervalMatrix J(F::kOut, F::kIn);
  for (int i = 0; i < F::kOut; ++i)
    for (int j = 0; j < F::kIn; ++j) J(i, j) = out[i].d[j];
  return J;
}

// Jacobian and value in one sweep.
template <class F>
void jacobian_value(const F& f, const Box& box, IntervalMatrix* J, Box* val) {
  using D = Dual<Interval, F::kIn>;
  std::array<D, F::kIn> in;
  for (int i = 0; i < F::kIn; ++i) in[i] = D::var(box[i], i);
  auto out = f(in);
  J->resize(F::kOut, F::kIn);
  val->resize(F::kOut);
  for (int i = 0; i < F::kOut; ++i) {
    (*val)[i] = out[i].v;
    for (int j = 0; j < F::kIn; ++j) (*J)(i, j) = out[i].d[j];
  }
}

// Floating-point Jacobian for predictors and preconditioner seeds.
template <class F>
void jacobian_fp(const F& f, const Eigen::VectorXd& x, Eigen::MatrixXd* J,
                 Eigen::VectorXd* val) {
  using D = Dual<double, F::kIn>;
  std::array<D, F::kIn> in;
  for (int i = 0; i < F::kIn; ++i) in[i] = D::var(x[i], i);
  auto out = f(in);
  J->resize(F::kOut, F::kIn);
  val->resize(F::kOut);
  for (int i = 0; i < F::kOut; ++i) {
    (*val)[i] = out[i].v;
    for (int j = 0; j < F::kIn; ++j) (*J)(i, j) = out[i].d[j];
  }
}

using Jet = TaylorJet<Interval>;

// Taylor coefficients of t -> f(x0 + t v), one jet per component. Orders
// above `order` are still computed (degree fixed at 3) but callers may
// ignore them.
template <class F>
std::vector<Jet> directional_jet(const F& f, const Box& x0,
                                 const Eigen::VectorXd& v) {
  std::array<Jet, F::kIn> in;
  for (int i = 0; i < F::kIn; ++i) in[i] = Jet::line(x0[i], Interval(v[i]));
  auto out = f(in);
  return std::vector<Jet>(out.begin(), out.end());
}

// dF/dmu at (x0, mu0) for systems exposing
//   template <class S> array<S,kOut> eval_xm(const array<S,kIn>& x, S mu).
template <class F>
Box param_derivative(const F& f, const Box& x0, const Interval& mu0) {
  using D = Dual<Interval, 1>;
  std::array<D, F::kIn> in;
  for (int i = 0; i < F::kIn; ++i) in[i] = D(x0[i]);
  auto out = f.eval_xm(in, D::var(mu0, 0));
  Box r(F::kOut);
  for (int i = 0; i < F::kOut; ++i) r[i] = out[i].d[0];
  return r;
}

}  // namespace kitecc
