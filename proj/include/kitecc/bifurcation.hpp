#pragma once

// Rigorous classification of one-parameter bifurcations.
//
// For F(x, mu) = 0 with a rank-one defect at (x*, mu*), the local normal form
// is decided by signs of the classical tangency coefficients
//
//   t1 = w' F_mu            t2 = w' dF_mu(v)
//   t3 = w' D2F(v, v)       t4 = w' D3F(v, v, v)
//
// where v and w span the right and left null spaces of J = DF(x*).  All four
// are evaluated as interval enclosures over an enclosure of the critical
// point, so a verdict other than Inconclusive is a proof:
//
//   t1 != 0, t3 != 0                 fold
//   t1 = 0, t2 != 0, t3 != 0         transcritical
//   t1 = 0, t2 != 0, t3 = 0, t4 < 0  supercritical pitchfork
//                            t4 > 0  subcritical pitchfork
//
// Equality with zero can never be established from a plain enclosure, only
// containment.  A coefficient counts as zero when its enclosure is the exact
// point interval [0, 0] (which survives outward rounding only for structural
// cancellations) or when a symmetry argument forces it; otherwise containment
// of zero downgrades the verdict to Inconclusive.  Orientation of w is fixed
// by making t2 positive, so the pitchfork subtype is read off t4 alone.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "kitecc/autodiff.hpp"
#include "kitecc/box.hpp"
#include "kitecc/interval.hpp"
#include "kitecc/krawczyk.hpp"
#include "kitecc/planar.hpp"

namespace kitecc {

enum class BifurcationKind {
  Fold,
  Transcritical,
  PitchforkSuper,
  PitchforkSub,
  Inconclusive,
};

inline const char* to_string(BifurcationKind k) {
  switch (k) {
    case BifurcationKind::Fold: return "Fold";
    case BifurcationKind::Transcritical: return "Transcritical";
    case BifurcationKind::PitchforkSuper: return "PitchforkSuper";
    case BifurcationKind::PitchforkSub: return "PitchforkSub";
    case BifurcationKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

// Thrown when no certified null pair exists, i.e. the Jacobian enclosure is
// regular and the point is not a bifurcation candidate at all.
class NotRankDeficient : public std::runtime_error {
 public:
  explicit NotRankDeficient(const std::string& what) : std::runtime_error(what) {}
};

struct BifurcationReport {
  Box point;           // enclosure of the critical state
  Interval mu;         // enclosure of the critical parameter value
  IntervalMatrix J;    // Jacobian enclosure at the point
  Box v, w;            // certified right / left null vectors
  Interval t1, t2, t3, t4;
  bool t1_structural = false;  // t1 = 0 forced by symmetry, not computed
  bool t3_structural = false;
  BifurcationKind kind = BifurcationKind::Inconclusive;
};

namespace detail {

inline double mag(const Interval& x) {
  return std::fmax(std::fabs(x.lo()), std::fabs(x.hi()));
}

inline Interval dot(const Box& a, const Box& b) {
  Interval acc(0.0);
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// 0 in J v (right = true multiplies by rows, else by columns for w' J).
inline bool null_residual_ok(const IntervalMatrix& J, const Box& x, bool right) {
  for (Eigen::Index i = 0; i < J.rows(); ++i) {
    Interval acc(0.0);
    for (Eigen::Index j = 0; j < J.cols(); ++j)
      acc += (right ? J(i, j) : J(j, i)) * x[j];
    if (!acc.contains(0.0)) return false;
  }
  return true;
}

}  // namespace detail

// Certified right and left null vectors of a rank-defect-one interval matrix.
// 2x2 matrices use the adjugate closed form; larger ones start from the
// smallest singular pair of the midpoint and inflate until the residual
// encloses zero.  Throws NotRankDeficient when no inflation certifies, which
// in particular happens whenever the matrix enclosure is regular.
inline std::pair<Box, Box> null_vectors(const IntervalMatrix& J) {
  const Eigen::Index n = J.rows();
  if (J.cols() != n || n == 0) throw NotRankDeficient("matrix must be square");

  if (n == 1) {
    if (!J(0, 0).contains(0.0)) throw NotRankDeficient("1x1 entry excludes zero");
    Box v(1);
    v[0] = Interval(1.0);
    return {v, v};
  }

  if (n == 2) {
    double scale = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) scale = std::fmax(scale, detail::mag(J(i, j)));
    // Row one of the adjugate degenerates when the top row (for v) or left
    // column (for w) of J is itself tiny; fall back to the other row then.
    Box v(2), w(2);
    if (std::fmax(detail::mag(J(0, 0)), detail::mag(J(0, 1))) > 1e-8 * scale) {
      v[0] = -J(0, 1);
      v[1] = J(0, 0);
    } else {
      v[0] = J(1, 1);
      v[1] = -J(1, 0);
    }
    if (std::fmax(detail::mag(J(0, 0)), detail::mag(J(1, 0))) > 1e-8 * scale) {
      w[0] = -J(1, 0);
      w[1] = J(0, 0);
    } else {
      w[0] = J(1, 1);
      w[1] = -J(0, 1);
    }
    if (!detail::null_residual_ok(J, v, true) || !detail::null_residual_ok(J, w, false))
      throw NotRankDeficient("2x2 null residual excludes zero");
    return {v, w};
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(midpoint(J),
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd v0 = svd.matrixV().col(n - 1);
  Eigen::VectorXd w0 = svd.matrixU().col(n - 1);
  for (double delta : {0.0, 1e-15, 1e-13, 1e-11, 1e-9, 1e-7}) {
    Box v(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v[i] = Interval(v0[i]) + Interval(-delta, delta);
      w[i] = Interval(w0[i]) + Interval(-delta, delta);
    }
    if (detail::null_residual_ok(J, v, true) && detail::null_residual_ok(J, w, false))
      return {v, w};
  }
  throw NotRankDeficient("null residual excludes zero at every inflation");
}

namespace detail {

// w' d/dmu (DF(x) v): one tangent in mu nested inside one tangent along v.
template <class System>
Interval mixed_param_direction(const System& sys, const Box& point, const Interval& mu,
                               const Box& v, const Box& w) {
  using DI = Dual<Interval, 1>;
  using DD = Dual<DI, 1>;
  std::array<DD, System::kIn> in;
  for (int i = 0; i < System::kIn; ++i) {
    in[i] = DD(DI(point[i]));
    in[i].d[0] = DI(v[i]);
  }
  DD m(DI::var(mu, 0));
  auto out = sys.eval_xm(in, m);
  Interval acc(0.0);
  for (int i = 0; i < System::kOut; ++i) acc += w[i] * out[i].d[0].d[0];
  return acc;
}

// w' D2F(v, v) and w' D3F(v, v, v) from one degree-3 jet along v.
template <class System>
void directional_forms(const System& sys, const Box& point, const Box& v, const Box& w,
                       Interval* t3, Interval* t4) {
  std::array<Jet, System::kIn> in;
  for (int i = 0; i < System::kIn; ++i) in[i] = Jet::line(point[i], v[i]);
  auto out = sys(in);
  Interval a2(0.0), a3(0.0);
  for (int i = 0; i < System::kOut; ++i) {
    a2 += w[i] * out[i].c[2];
    a3 += w[i] * out[i].c[3];
  }
  *t3 = 2.0 * a2;
  *t4 = 6.0 * a3;
}

inline void flip_orientation(BifurcationReport* r) {
  // Negating an exact zero would flip its sign bit; keep zeros canonical.
  auto neg = [](const Interval& x) {
    return is_exact_zero(x) ? Interval(0.0) : -x;
  };
  for (Eigen::Index i = 0; i < r->w.size(); ++i) r->w[i] = neg(r->w[i]);
  r->t1 = neg(r->t1);
  r->t2 = neg(r->t2);
  r->t3 = neg(r->t3);
  r->t4 = neg(r->t4);
}

inline void decide(BifurcationReport* r) {
  if (!r->t1.contains(0.0)) {
    if (!r->t3.contains(0.0)) r->kind = BifurcationKind::Fold;
    return;
  }
  if (!(r->t1_structural || is_exact_zero(r->t1))) return;
  if (r->t2.contains(0.0)) return;
  if (r->t2.hi() < 0.0) flip_orientation(r);
  if (!r->t3.contains(0.0)) {
    r->kind = BifurcationKind::Transcritical;
    return;
  }
  if (!(r->t3_structural || is_exact_zero(r->t3))) return;
  if (r->t4.contains(0.0)) return;
  r->kind = r->t4.hi() < 0.0 ? BifurcationKind::PitchforkSuper
                             : BifurcationKind::PitchforkSub;
}

// Fills t1..t4 and the verdict once point, mu, J, v, w are in place.  A
// structural flag is honored only when the computed enclosure is consistent
// with it; the enclosure is then collapsed to the exact zero it proves.
template <class System>
void finish_report(const System& sys, BifurcationReport* rep) {
  rep->t1 = detail::dot(rep->w, param_derivative(sys, rep->point, rep->mu));
  rep->t2 = mixed_param_direction(sys, rep->point, rep->mu, rep->v, rep->w);
  directional_forms(sys, rep->point, rep->v, rep->w, &rep->t3, &rep->t4);
  if (rep->t1_structural) {
    if (rep->t1.contains(0.0)) rep->t1 = Interval(0.0);
    else rep->t1_structural = false;
  }
  if (rep->t3_structural) {
    if (rep->t3.contains(0.0)) rep->t3 = Interval(0.0);
    else rep->t3_structural = false;
  }
  decide(rep);
}

}  // namespace detail

// Classify a candidate critical point of a square system with parameter mu.
// The system must expose eval_xm(state, mu) alongside operator().  Throws
// NotRankDeficient when the Jacobian enclosure has no certified null pair.
template <class System>
BifurcationReport classify(const System& sys, const Box& point, const Interval& mu) {
  BifurcationReport rep;
  rep.point = point;
  rep.mu = mu;
  rep.J = jacobian(sys, point);
  auto nv = null_vectors(rep.J);
  rep.v = nv.first;
  rep.w = nv.second;
  detail::finish_report(sys, &rep);
  return rep;
}

// The reflection (x3, y3, x4, y4, lambda) -> (-x3, y3, -x4, y4, lambda)
// composed with swapping the two unit masses is a symmetry of the planar
// residuals.  Because floating subtraction and negation commute with sign
// flips exactly, the identity holds bit for bit in double arithmetic; this
// samples it, pairing residual rows as e1 <-> e2 (x components negated) and
// e3, e4 mapped to themselves (x odd, y even).
inline bool reflection_parity_holds(double m_axis, int samples = 64,
                                    std::uint64_t seed = 2026) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> off(-0.4, 0.4);
  std::uniform_real_distribution<double> y3d(0.2, 0.9);
  std::uniform_real_distribution<double> y4d(1.2, 2.2);
  std::uniform_real_distribution<double> lam(0.5, 1.8);
  for (int k = 0; k < samples; ++k) {
    std::array<double, 5> z{off(rng), y3d(rng), off(rng), y4d(rng), lam(rng)};
    std::array<double, 5> rz{-z[0], z[1], -z[2], z[3], z[4]};
    auto e = detail::planar_residuals(z, 1.0, m_axis);
    auto er = detail::planar_residuals(rz, 1.0, m_axis);
    if (!(er[0] == -e[2] && er[1] == e[3] && er[2] == -e[0] && er[3] == e[1] &&
          er[4] == -e[4] && er[5] == e[5] && er[6] == -e[6] && er[7] == e[7]))
      return false;
  }
  return true;
}

// Classification at a reflection-symmetric state of the planar system (both
// axis bodies on the symmetry axis, x components exactly zero).  The parity
// above splits the Jacobian: odd rows restricted to even columns vanish, so
// a null pair can be built inside the odd (x3, x4) plane from the 2x2 block
// A = d(e3x, e4x)/d(x3, x4) alone, and w then annihilates F_mu exactly
// because the odd residual rows are identically zero on the axis.  That
// gives t1 = [0, 0] structurally; the same parity kills every even-order
// directional derivative against w, so t3 = [0, 0] as well.  The structural
// claim additionally needs the even-even complement of J to be regular
// (checked with a preconditioned interval bound), otherwise the null space
// might not be confined to the odd plane and the flags stay off.
inline BifurcationReport classify_symmetric(const Box& point, const Interval& mu) {
  PlanarSystem sys{mu};
  BifurcationReport rep;
  rep.point = point;
  rep.mu = mu;
  rep.J = jacobian(sys, point);

  Box v(5), w(5);
  for (int i = 0; i < 5; ++i) v[i] = w[i] = Interval(0.0);
  v[0] = -rep.J(0, 2);
  v[2] = rep.J(0, 0);
  w[0] = -rep.J(2, 0);
  w[2] = rep.J(0, 0);
  if (!detail::null_residual_ok(rep.J, v, true) ||
      !detail::null_residual_ok(rep.J, w, false))
    throw NotRankDeficient("odd-plane null residual excludes zero");
  rep.v = v;
  rep.w = w;

  bool on_axis = is_exact_zero(point[0]) && is_exact_zero(point[2]);

  IntervalMatrix even(3, 3);
  const int idx[3] = {1, 3, 4};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) even(i, j) = rep.J(idx[i], idx[j]);
  bool even_regular = false;
  Eigen::MatrixXd C;
  if (invert_approx(midpoint(even), &C)) {
    IntervalMatrix R = to_interval(C) * even;
    double norm = 0.0;
    for (int i = 0; i < 3; ++i) {
      R(i, i) -= Interval(1.0);
      double row = 0.0;
      for (int j = 0; j < 3; ++j) row += detail::mag(R(i, j));
      norm = std::fmax(norm, row);
    }
    even_regular = norm < 1.0;
  }

  bool structural = on_axis && even_regular && reflection_parity_holds(mu.mid());
  rep.t1_structural = structural;
  rep.t3_structural = structural;
  detail::finish_report(sys, &rep);
  return rep;
}

}  // namespace kitecc
