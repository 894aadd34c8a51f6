#pragma once

// Shape-space equations of the concave kite configuration. Two unit masses
// sit at (-1,0) and (1,0); two masses m sit on the symmetry axis at heights
// u = sqrt(a^2-1) and v = sqrt(b^2-1), so a and b are the distances from
// (+-1,0) to the inner and outer axis body. Every function is templated on
// the scalar type: double for fast approximation, Interval for enclosures,
// Dual/TaylorJet for derivatives.

#include <array>

#include "kitecc/autodiff.hpp"
#include "kitecc/f2_tables.hpp"
#include "kitecc/interval.hpp"

namespace kitecc {

// Recurring subexpressions. With d = u - v:
//   x  = u (a^3 - 8) / a^6        x1 = d^3 + a^3
//   y  = v (b^3 - 8) / b^6        y1 = d^3 + b^3
//   w1 = a^3 b^3 d^2 / 4
// The balance conditions for the two axis bodies are h1 = -w1 x / y1 and
// h2 = w1 y / x1; both equal the axis mass m at a central configuration.
template <class S>
struct KiteParts {
  S u, v, d;
  S x, x1, y, y1, w1;
};

template <class S>
KiteParts<S> kite_parts(const S& a, const S& b) {
  KiteParts<S> r;
  r.u = sqrt(pow_int(a, 2) - 1.0);
  r.v = sqrt(pow_int(b, 2) - 1.0);
  r.d = r.u - r.v;
  S a3 = pow_int(a, 3), b3 = pow_int(b, 3);
  S d3 = pow_int(r.d, 3);
  r.x = r.u * (a3 - 8.0) / pow_int(a, 6);
  r.x1 = d3 + a3;
  r.y = r.v * (b3 - 8.0) / pow_int(b, 6);
  r.y1 = d3 + b3;
  r.w1 = a3 * b3 * pow_int(r.d, 2) / 4.0;
  return r;
}

// Force balance along the axis for the inner (g1) and outer (g2) body,
// after the reflection symmetry reduces the system to two equations.
// Singular on the diagonal a = b where the two axis bodies collide.
template <class S>
std::array<S, 2> eval_g1_g2(const S& a, const S& b, const S& m) {
  S u = sqrt(pow_int(a, 2) - 1.0);
  S v = sqrt(pow_int(b, 2) - 1.0);
  S d = u - v;
  S a3 = pow_int(a, 3), b3 = pow_int(b, 3), d2 = pow_int(d, 2);
  S g1 = m * (1.0 / d2 + d / b3) - u * (8.0 - a3) / (4.0 * a3);
  S g2 = m * (1.0 / d2 + d / a3) + v * (8.0 - b3) / (4.0 * b3);
  return {g1, g2};
}

template <class S>
S eval_lambda(const S& a, const S& b, const S& m) {
  return m * (1.0 / pow_int(a, 3) + 1.0 / pow_int(b, 3)) + 0.25;
}

// The axis mass that balances the inner body, m = h1(a, b). y1 > 0 holds on
// the whole closed shape domain, so thin evaluations never hit a zero
// denominator; wide boxes whose y1 enclosure straddles zero raise
// DomainError and are handled by bisection upstream.
template <class S>
S eval_m(const S& a, const S& b) {
  auto p = kite_parts(a, b);
  return -(p.w1 * p.x) / p.y1;
}

// Both balance masses. h2 has a genuine pole: x1 = d^3 + a^3 vanishes on a
// curve through the shape domain (e.g. at a = 2/sqrt(3), b = 2), where the
// division raises DomainError.
template <class S>
std::array<S, 2> eval_h1_h2(const S& a, const S& b) {
  auto p = kite_parts(a, b);
  S h1 = -(p.w1 * p.x) / p.y1;
  S h2 = (p.w1 * p.y) / p.x1;
  return {h1, h2};
}

// Pole-free combination equivalent to h1 = h2: multiplying out the
// denominators of h1 - h2 leaves x x1 + y y1 up to a positive factor. Its
// zero set is the curve of central configurations, each point carrying the
// mass m = eval_m.
template <class S>
S eval_g(const S& a, const S& b) {
  auto p = kite_parts(a, b);
  return p.x * p.x1 + p.y * p.y1;
}

// f1 = dm/da dg/db - dm/db dg/da. Vanishes where the gradients of m and g
// align, i.e. where m is critical along the solution curve.
template <class S>
S eval_f1(const S& a, const S& b) {
  using D = Dual<S, 2>;
  D A = D::var(a, 0), B = D::var(b, 1);
  D m = eval_m(A, B);
  D g = eval_g(A, B);
  return m.d[0] * g.d[1] - m.d[1] * g.d[0];
}

// Cleared Jacobian determinant of (h1, h2),
//
//   f2t = 16 a b u v x1^2 y1^2 (dh1/da dh2/db - dh1/db dh2/da),
//
// evaluated in a structured form that never divides by u, v, x1 or y1.
// Write h1 = N1/Y1, h2 = N2/X1 with N1 = -w1 x, N2 = w1 y, X1 = x1,
// Y1 = y1. Partials of N and the denominators with (a, b, u, v) treated as
// independent come from one Dual<S,4> sweep; the chain rule du/da = a/u,
// dv/db = b/v is then folded in after scaling the a-row by u and the b-row
// by v, which cancels the singular quotients:
//
//   Sa1 = u (N1_a Y1 - N1 Y1_a) + a (N1_u Y1 - N1 Y1_u) = u Y1^2 dh1/da
//
// and likewise for the other three, so f2t = 16 a b (Sa1 Sb2 - Sb1 Sa2).
// Direct monomial expansion (eval_f2_tilde_table) cancels catastrophically
// between its four radical components; this form stays tight on wide boxes
// and is well defined on the whole closed domain including a = 1.
template <class S>
S eval_f2_tilde(const S& a, const S& b) {
  S u = sqrt(pow_int(a, 2) - 1.0);
  S v = sqrt(pow_int(b, 2) - 1.0);
  using D = Dual<S, 4>;
  D A = D::var(a, 0), B = D::var(b, 1), U = D::var(u, 2), V = D::var(v, 3);
  D d = U - V;
  D a3 = pow_int(A, 3), b3 = pow_int(B, 3), d2 = pow_int(d, 2);
  D N1 = -(b3 * d2 * U * (a3 - 8.0)) / (4.0 * a3);
  D N2 = (a3 * d2 * V * (b3 - 8.0)) / (4.0 * b3);
  D d3 = d2 * d;
  D X1 = d3 + a3;
  D Y1 = d3 + b3;
  auto scaled_row = [](const D& N, const D& Den, int ei, int ci,
                       const S& es, const S& cs) {
    return es * (N.d[ei] * Den.v - N.v * Den.d[ei]) +
           cs * (N.d[ci] * Den.v - N.v * Den.d[ci]);
  };
  S sa1 = scaled_row(N1, Y1, 0, 2, u, a);
  S sb1 = scaled_row(N1, Y1, 1, 3, v, b);
  S sa2 = scaled_row(N2, X1, 0, 2, u, a);
  S sb2 = scaled_row(N2, X1, 1, 3, v, b);
  return 16.0 * a * b * (sa1 * sb2 - sb1 * sa2);
}

// Independently derived monomial expansion of the same polynomial, along
// the basis {1, u, v, uv}. Loose on wide boxes (the four components cancel
// against each other); kept as a thin-point cross-check of eval_f2_tilde.
template <class S>
S eval_f2_tilde_table(const S& a, const S& b) {
  S u = sqrt(pow_int(a, 2) - 1.0);
  S v = sqrt(pow_int(b, 2) - 1.0);
  std::array<S, 16> pa, pb;
  pa[0] = S(1.0);
  pb[0] = S(1.0);
  for (int k = 1; k < 16; ++k) {
    pa[k] = pa[k - 1] * a;
    pb[k] = pb[k - 1] * b;
  }
  auto poly = [&](const auto& terms) {
    S acc(0.0);
    for (const auto& t : terms)
      acc = acc + static_cast<double>(t.c) * (pa[t.i] * pb[t.j]);
    return acc;
  };
  return poly(f2_tables::kTerms1) + poly(f2_tables::kTermsU) * u +
         poly(f2_tables::kTermsV) * v + poly(f2_tables::kTermsUV) * (u * v);
}

// Quintic whose unique root b1 in (2.75, 2.76) bounds the region where the
// outer-body term y y1 is monotone in b.
template <class S>
S eval_p(const S& z) {
  return -2.0 * pow_int(z, 5) + 3.0 * pow_int(z, 3) +
         40.0 * pow_int(z, 2) - 48.0;
}

// Planar positions (x3, y3, x4, y4) of the two axis bodies for shape (a, b).
template <class S>
std::array<S, 4> shape_to_positions(const S& a, const S& b) {
  S u = sqrt(pow_int(a, 2) - 1.0);
  S v = sqrt(pow_int(b, 2) - 1.0);
  return {S(0.0), u, S(0.0), v};
}

// ---- systems for the certification engine ----

// Zeros are the critical points of m along the solution curve.
struct ExtremaSystem {
  static constexpr int kIn = 2, kOut = 2;
  template <class S>
  std::array<S, 2> operator()(const std::array<S, 2>& r) const {
    return {eval_f2_tilde(r[0], r[1]), eval_g(r[0], r[1])};
  }
};

// Alternative critical-point system through eval_m, used to cross-check
// ExtremaSystem zeros.
struct ExtremaF1System {
  static constexpr int kIn = 2, kOut = 2;
  template <class S>
  std::array<S, 2> operator()(const std::array<S, 2>& r) const {
    return {eval_f1(r[0], r[1]), eval_g(r[0], r[1])};
  }
};

// Zeros are the critical points of b along the solution curve.
struct ExtremaBSystem {
  static constexpr int kIn = 2, kOut = 2;
  template <class S>
  std::array<S, 2> operator()(const std::array<S, 2>& r) const {
    using D = Dual<S, 1>;
    D A = D::var(r[0], 0), B(r[1]);
    D g = eval_g(A, B);
    return {g.d[0], g.v};
  }
};

// Shapes on the solution curve whose balance mass equals a given m.
struct ShapeForMassSystem {
  static constexpr int kIn = 2, kOut = 2;
  Interval m;
  template <class S>
  std::array<S, 2> operator()(const std::array<S, 2>& r) const {
    return eval_xm(r, param_cast<S>(m));
  }
  template <class S>
  std::array<S, 2> eval_xm(const std::array<S, 2>& r, const S& mu) const {
    return {eval_g(r[0], r[1]), eval_m(r[0], r[1]) - mu};
  }
};

// One-dimensional slice of the curve at fixed a, solved for b.
struct CurveSliceSystem {
  static constexpr int kIn = 1, kOut = 1;
  Interval a;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& x) const {
    return {eval_g(param_cast<S>(a), x[0])};
  }
};

// Root system for the quintic p.
struct QuinticSystem {
  static constexpr int kIn = 1, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& x) const {
    return {eval_p(x[0])};
  }
};

// The balance pair (g1, g2) at fixed mass, for residual checks.
struct BalanceSystem {
  static constexpr int kIn = 2, kOut = 2;
  Interval m;
  template <class S>
  std::array<S, 2> operator()(const std::array<S, 2>& r) const {
    return eval_g1_g2(r[0], r[1], param_cast<S>(m));
  }
};

// Mass-gap pair G = (m - h1, m - h2). Its Jacobian in (a, b) loses rank
// exactly where the mass attains a critical value along the curve, and
// dG/dm = (1, 1) exactly.
struct MassBalanceSystem {
  static constexpr int kIn = 2, kOut = 2;
  Interval m;
  template <class S>
  std::array<S, 2> operator()(const std::array<S, 2>& r) const {
    return eval_xm(r, param_cast<S>(m));
  }
  template <class S>
  std::array<S, 2> eval_xm(const std::array<S, 2>& r, const S& mu) const {
    auto h = eval_h1_h2(r[0], r[1]);
    return {mu - h[0], mu - h[1]};
  }
};

// ---- scalar fields for the sign-certification campaigns ----

// x as a function of a alone (it does not involve b).
struct FieldX {
  static constexpr int kIn = 1, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& r) const {
    S u = sqrt(pow_int(r[0], 2) - 1.0);
    S a3 = pow_int(r[0], 3);
    return {u * (a3 - 8.0) / pow_int(r[0], 6)};
  }
};

struct FieldY1 {
  static constexpr int kIn = 2, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 2>& r) const {
    return {kite_parts(r[0], r[1]).y1};
  }
};

// d(x1)/db = -3 d^2 b / v, computed by seeding b in a one-tangent dual.
struct FieldDx1Db {
  static constexpr int kIn = 2, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 2>& r) const {
    using D = Dual<S, 1>;
    D A(r[0]), B = D::var(r[1], 0);
    D v = sqrt(pow_int(B, 2) - 1.0);
    D u = sqrt(pow_int(A, 2) - 1.0);
    D d = u - v;
    D x1 = pow_int(d, 3) + pow_int(A, 3);
    return {x1.d[0]};
  }
};

// d(y y1)/db.
struct FieldDyy1Db {
  static constexpr int kIn = 2, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 2>& r) const {
    using D = Dual<S, 1>;
    D A(r[0]), B = D::var(r[1], 0);
    auto p = kite_parts(A, B);
    D yy1 = p.y * p.y1;
    return {yy1.d[0]};
  }
};

// dg/db.
struct FieldDgDb {
  static constexpr int kIn = 2, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 2>& r) const {
    using D = Dual<S, 1>;
    D A(r[0]), B = D::var(r[1], 0);
    D g = eval_g(A, B);
    return {g.d[0]};
  }
};

// g over the (a, b) plane, for exclusion campaigns above the curve.
struct FieldG {
  static constexpr int kIn = 2, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 2>& r) const {
    return {eval_g(r[0], r[1])};
  }
};

// g along a horizontal slice at fixed b, as a function of a.
struct FieldGSliceB {
  static constexpr int kIn = 1, kOut = 1;
  Interval b;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& r) const {
    return {eval_g(r[0], param_cast<S>(b))};
  }
};

}  // namespace kitecc
