#pragma once

// Full planar central-configuration system with the base pair pinned at
// q1 = (-1, 0), q2 = (1, 0). The state vector is (x3, y3, x4, y4, lambda)
// and the residual of body j is
//
//   e_j = lambda (q_j - c) - sum_{i != j} m_i (q_j - q_i) / r_ij^3,
//
// c being the center of mass. Masses come in two equal pairs: m1 = m2 and
// m3 = m4. Of the eight scalar residuals a square selection of five is
// certified; the omitted three vanish automatically at true solutions by
// the translation and rotation identities and are re-checked separately.

#include <array>

#include "kitecc/autodiff.hpp"
#include "kitecc/interval.hpp"

namespace kitecc {

namespace detail {

// All eight residuals, ordered (e1x, e1y, e2x, e2y, e3x, e3y, e4x, e4y).
// Throws DomainError when some r_ij enclosure contains zero.
template <class S>
std::array<S, 8> planar_residuals(const std::array<S, 5>& s, const S& m_base,
                                  const S& m_axis) {
  const std::array<std::array<S, 2>, 4> q = {{{S(-1.0), S(0.0)},
                                              {S(1.0), S(0.0)},
                                              {s[0], s[1]},
                                              {s[2], s[3]}}};
  const std::array<S, 4> ms = {m_base, m_base, m_axis, m_axis};
  const S& lam = s[4];

  S total = ms[0] + ms[1] + ms[2] + ms[3];
  S cx(0.0), cy(0.0);
  for (int i = 0; i < 4; ++i) {
    cx = cx + ms[i] * q[i][0];
    cy = cy + ms[i] * q[i][1];
  }
  cx = cx / total;
  cy = cy / total;

  std::array<S, 8> e;
  for (int j = 0; j < 4; ++j) {
    // The pull of each equal-mass pair is summed before mixing with the
    // other pair. Swapping the two bodies of a pair then only commutes one
    // floating addition, so the mirror symmetry of the configuration is
    // exact in floating point, not merely up to rounding.
    S ix(0.0), iy(0.0);
    for (int half = 0; half < 2; ++half) {
      S px(0.0), py(0.0);
      for (int i = 2 * half; i < 2 * half + 2; ++i) {
        if (i == j) continue;
        S dx = q[j][0] - q[i][0];
        S dy = q[j][1] - q[i][1];
        S r3 = pow_int(sqrt(pow_int(dx, 2) + pow_int(dy, 2)), 3);
        px = px + ms[i] * dx / r3;
        py = py + ms[i] * dy / r3;
      }
      ix = ix + px;
      iy = iy + py;
    }
    e[2 * j] = lam * (q[j][0] - cx) - ix;
    e[2 * j + 1] = lam * (q[j][1] - cy) - iy;
  }
  return e;
}

}  // namespace detail

// Square selection for certification: both components of the body-3 and
// body-4 equations plus the x component of the body-1 equation. Base masses
// are 1, axis masses m.
template <class S>
std::array<S, 5> eval_planar(const std::array<S, 5>& s, const S& m) {
  auto e = detail::planar_residuals(s, S(1.0), m);
  return {e[4], e[5], e[6], e[7], e[0]};
}

// The three residuals omitted from the square selection (e1y, e2x, e2y).
template <class S>
std::array<S, 3> planar_residual_check(const std::array<S, 5>& s, const S& m) {
  auto e = detail::planar_residuals(s, S(1.0), m);
  return {e[1], e[2], e[3]};
}

// Certification system at fixed axis mass; eval_xm exposes the mass as a
// differentiable parameter.
struct PlanarSystem {
  static constexpr int kIn = 5, kOut = 5;
  Interval m;
  template <class S>
  std::array<S, 5> operator()(const std::array<S, 5>& s) const {
    return eval_xm(s, param_cast<S>(m));
  }
  template <class S>
  std::array<S, 5> eval_xm(const std::array<S, 5>& s, const S& mu) const {
    return eval_planar(s, mu);
  }
};

// Mass pattern (0, 0, 1, 1): the base pair becomes massless, so its two
// full equations join the selection while the axis bodies contribute one.
struct SwappedPlanarSystem {
  static constexpr int kIn = 5, kOut = 5;
  template <class S>
  std::array<S, 5> operator()(const std::array<S, 5>& s) const {
    auto e = detail::planar_residuals(s, S(0.0), S(1.0));
    return {e[4], e[0], e[1], e[2], e[3]};
  }
};

template <class S>
std::array<S, 3> swapped_residual_check(const std::array<S, 5>& s) {
  auto e = detail::planar_residuals(s, S(0.0), S(1.0));
  return {e[5], e[6], e[7]};
}

// Base-pair mass s with unit axis masses, in the swapped selection. s = 0 is
// the massless-base system above; s = 1 has the same solutions as the unit
// axis-mass system. Used to continue solutions into the massless limit.
struct MassRatioSystem {
  static constexpr int kIn = 5, kOut = 5;
  Interval s;
  template <class S>
  std::array<S, 5> operator()(const std::array<S, 5>& st) const {
    return eval_xm(st, param_cast<S>(s));
  }
  template <class S>
  std::array<S, 5> eval_xm(const std::array<S, 5>& st, const S& mu) const {
    auto e = detail::planar_residuals(st, mu, S(1.0));
    return {e[4], e[0], e[1], e[2], e[3]};
  }
};

// Symmetric slice x3 = x4 = 0: unknowns (y3, y4, lambda) with the axis mass
// a parameter. Rows are (e3y, e4y, e1x).
struct SymmetricAxisSystem {
  static constexpr int kIn = 3, kOut = 3;
  Interval m;
  template <class S>
  std::array<S, 3> operator()(const std::array<S, 3>& s) const {
    return eval_xm(s, param_cast<S>(m));
  }
  template <class S>
  std::array<S, 3> eval_xm(const std::array<S, 3>& s, const S& mu) const {
    std::array<S, 5> full = {S(0.0), s[0], S(0.0), s[1], s[2]};
    auto e = detail::planar_residuals(full, S(1.0), mu);
    return {e[5], e[7], e[0]};
  }
};

// Off-axis stiffness block A = d(e3x, e4x)/d(x3, x4) at a symmetric state,
// obtained from one inner dual sweep.
template <class S>
std::array<S, 4> symmetric_offaxis_block(const S& y3, const S& y4,
                                         const S& lam, const S& m) {
  using D = Dual<S, 2>;
  std::array<D, 5> full = {D::var(S(0.0), 0), D(y3), D::var(S(0.0), 1),
                           D(y4), D(lam)};
  auto e = detail::planar_residuals(full, D(S(1.0)), D(m));
  return {e[4].d[0], e[4].d[1], e[6].d[0], e[6].d[1]};
}

// Locator for the symmetry-breaking point: symmetric equations plus
// degeneracy of the off-axis block, unknowns (y3, y4, lambda, m).
struct PitchforkLocatorSystem {
  static constexpr int kIn = 4, kOut = 4;
  template <class S>
  std::array<S, 4> operator()(const std::array<S, 4>& s) const {
    using D = Dual<S, 2>;
    std::array<D, 5> full = {D::var(S(0.0), 0), D(s[0]), D::var(S(0.0), 1),
                             D(s[1]), D(s[2])};
    auto e = detail::planar_residuals(full, D(S(1.0)), D(s[3]));
    S det_a = e[4].d[0] * e[6].d[1] - e[4].d[1] * e[6].d[0];
    return {e[5].v, e[7].v, e[0].v, det_a};
  }
};

}  // namespace kitecc
