#pragma once

// Tracing and enumeration on top of the certified campaigns.
//
// The shape curve g = 0 is a graph b(a) over [1, 2]: dg/db > 0 holds on the
// strip (proved by the sign campaigns), with g < 0 on its lower edge and
// g > 0 on its upper edge. Tracing therefore walks fixed-a slices and
// certifies the single root of each with the scalar-root campaign. The mass
// along the curve follows from the closed-form quotient, vanishing at both
// endpoints (1, 2) and (2, 2).
//
// Solution enumeration at a given axis mass m combines a two-dimensional
// campaign for the symmetric shapes with continuation for the asymmetric
// pair born at the symmetry-breaking point. Every reported solution carries
// a certified enclosure; numerical continuation only supplies the seeds.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitecc/autodiff.hpp"
#include "kitecc/box.hpp"
#include "kitecc/equations.hpp"
#include "kitecc/interval.hpp"
#include "kitecc/krawczyk.hpp"
#include "kitecc/planar.hpp"
#include "kitecc/prover.hpp"

namespace kitecc {

// Strip known to contain the whole solution curve.
inline Box curve_domain() {
  Box d(2);
  d[0] = Interval(1.0, 2.0);
  d[1] = Interval(std::sqrt(2.0), 2.5);
  return d;
}

// Small rectangle isolating the curve's mass maximum.
inline Box fold_window() {
  Box d(2);
  d[0] = Interval(1.1, 1.2);
  d[1] = Interval(2.0, 2.1);
  return d;
}

struct CurveSample {
  Interval a, b, m;
};

// Certified curve samples at slices + 1 equally spaced values of a. Throws
// when a slice fails to certify, which the domain facts above rule out for
// any reasonable budget.
inline std::vector<CurveSample> trace_curve(int slices,
                                            const CampaignConfig& cfg = {}) {
  if (slices < 1) throw std::invalid_argument("need at least one slice");
  std::vector<CurveSample> out;
  out.reserve(static_cast<std::size_t>(slices) + 1);
  Box dom = curve_domain();
  for (int i = 0; i <= slices; ++i) {
    Interval a(detail::grid_edge(dom[0].lo(), dom[0].hi(), i, slices));
    Certificate cert = certify_scalar_root(CurveSliceSystem{a}, dom[1], cfg);
    if (cert.verdict != Verdict::UniqueZero || !cert.enclosure)
      throw std::runtime_error("curve slice failed to certify");
    Interval b = (*cert.enclosure)[0];
    out.push_back({a, b, eval_m(a, b)});
  }
  return out;
}

struct CurveExtrema {
  Box b_low;    // (a, b) enclosure at the curve's minimal b
  Box b_high;   // (a, b) enclosure at the maximal b
  Box m_peak;   // (a, b) enclosure at the mass maximum
  Interval m0;  // mass enclosure at the peak
};

// The three stationary points of the curve. Critical b solves
// (dg/da, g) = 0; the campaign runs on a strip shaved at a = 1 where the
// chart's square root makes dg/da blow up. The mass maximum comes from its
// own window so the campaign stays cheap.
inline CurveExtrema find_curve_extrema(const CampaignConfig& cfg = {}) {
  Box strip = curve_domain();
  strip[0] = Interval(1.001, 2.0);
  CampaignResult bres = certify_all_zeros(ExtremaBSystem{}, strip, cfg);
  if (bres.unique_zeros != 2 || bres.unknowns != 0)
    throw std::runtime_error("critical-b campaign did not isolate two points");
  std::vector<Box> encs;
  for (const Certificate& c : bres.certificates)
    if (c.verdict == Verdict::UniqueZero) encs.push_back(*c.enclosure);

  CurveExtrema ex;
  bool first_low = encs[0][1].mid() < encs[1][1].mid();
  ex.b_low = first_low ? encs[0] : encs[1];
  ex.b_high = first_low ? encs[1] : encs[0];

  CampaignResult fres = certify_all_zeros(ExtremaF1System{}, fold_window(), cfg);
  if (fres.unique_zeros != 1 || fres.unknowns != 0)
    throw std::runtime_error("mass-peak campaign did not isolate the point");
  for (const Certificate& c : fres.certificates)
    if (c.verdict == Verdict::UniqueZero) ex.m_peak = *c.enclosure;
  ex.m0 = eval_m(ex.m_peak[0], ex.m_peak[1]);
  return ex;
}

// Lift a curve point to the planar state (0, u, 0, v, lambda).
inline Box symmetric_state(const Interval& a, const Interval& b,
                           const Interval& m) {
  Box s(5);
  s[0] = Interval(0.0);
  s[1] = sqrt(pow_int(a, 2) - 1.0);
  s[2] = Interval(0.0);
  s[3] = sqrt(pow_int(b, 2) - 1.0);
  s[4] = eval_lambda(a, b, m);
  return s;
}

struct SymmetricSolution {
  Interval a, b;
  Box state;  // (x3, y3, x4, y4, lambda)
};

struct SymmetricSolveResult {
  std::vector<SymmetricSolution> solutions;  // sorted by a
  bool at_fold = false;  // query mass overlaps the mass-maximum enclosure
  int unresolved = 0;    // unknown leaves not absorbed by the fold rule
};

namespace detail {

inline bool box_inside(const Box& inner, const Box& outer) {
  for (Eigen::Index i = 0; i < inner.size(); ++i)
    if (!outer[i].contains(inner[i])) return false;
  return true;
}

}  // namespace detail

// Every symmetric shape with the given axis mass. m = 0 is handled
// analytically: the curve endpoints evaluate to exact interval zeros in both
// residuals. A mass overlapping the fold enclosure cannot be separated from
// the tangency by any enclosure method, so the campaign's unknown leaves
// near the mass maximum are absorbed into the certified fold point and the
// result is flagged.
inline SymmetricSolveResult solve_symmetric_for_m(const Interval& m,
                                                  const CampaignConfig& cfg = {}) {
  SymmetricSolveResult out;
  if (is_exact_zero(m)) {
    for (double av : {1.0, 2.0}) {
      Interval a(av), b(2.0);
      if (!is_exact_zero(eval_g(a, b)) || !is_exact_zero(eval_m(a, b)))
        throw std::runtime_error("endpoint residual is not an exact zero");
      out.solutions.push_back({a, b, symmetric_state(a, b, m)});
    }
    return out;
  }

  CampaignResult fold = certify_all_zeros(ExtremaF1System{}, fold_window(), cfg);
  Box peak;
  for (const Certificate& c : fold.certificates)
    if (c.verdict == Verdict::UniqueZero) peak = *c.enclosure;
  if (fold.unique_zeros != 1 || peak.size() != 2)
    throw std::runtime_error("mass-peak campaign did not isolate the point");
  Interval m0 = eval_m(peak[0], peak[1]);
  bool overlap = m.lo() <= m0.hi() && m0.lo() <= m.hi();

  CampaignResult res = certify_all_zeros(ShapeForMassSystem{m}, curve_domain(), cfg);
  Box hood(2);
  hood[0] = peak[0] + Interval(-1e-4, 1e-4);
  hood[1] = peak[1] + Interval(-1e-4, 1e-4);
  for (const Certificate& c : res.certificates) {
    if (c.verdict == Verdict::UniqueZero) {
      const Box& enc = *c.enclosure;
      if (overlap && detail::box_inside(enc, hood)) continue;
      out.solutions.push_back({enc[0], enc[1], symmetric_state(enc[0], enc[1], m)});
    } else if (c.verdict == Verdict::Unknown) {
      if (!(overlap && detail::box_inside(c.box, hood))) ++out.unresolved;
    }
  }
  if (overlap) {
    out.at_fold = true;
    out.solutions.push_back({peak[0], peak[1], symmetric_state(peak[0], peak[1], m0)});
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const SymmetricSolution& x, const SymmetricSolution& y) {
              return x.a.mid() < y.a.mid();
            });
  return out;
}

namespace detail {

// Plain double Newton on a five-dimensional square system. Returns true when
// the final residual is below tol.
template <class Sys>
bool newton_polish(const Sys& sys, std::array<double, 5>* st, int iters = 60,
                   double tol = 1e-10) {
  using D = Dual<double, 5>;
  Eigen::Matrix<double, 5, 5> J;
  Eigen::Matrix<double, 5, 1> F;
  for (int it = 0; it < iters; ++it) {
    std::array<D, 5> in;
    for (int i = 0; i < 5; ++i) in[i] = D::var((*st)[i], i);
    std::array<D, 5> out;
    try {
      out = sys(in);
    } catch (const DomainError&) {
      return false;
    }
    for (int i = 0; i < 5; ++i) {
      F(i) = out[i].v;
      for (int j = 0; j < 5; ++j) J(i, j) = out[i].d[j];
    }
    Eigen::Matrix<double, 5, 1> dx = J.fullPivLu().solve(F);
    if (!dx.allFinite()) return false;
    for (int i = 0; i < 5; ++i) (*st)[i] -= dx(i);
    if (dx.cwiseAbs().maxCoeff() < 1e-14) break;
  }
  try {
    auto r = sys(*st);
    double worst = 0.0;
    for (double v : r) worst = std::fmax(worst, std::fabs(v));
    return worst < tol;
  } catch (const DomainError&) {
    return false;
  }
}

// Krawczyk certification of a polished state, walking an inflation ladder.
template <class Sys>
std::optional<Box> certify_state(const Sys& sys, const std::array<double, 5>& st,
                                 double target_width = 1e-12) {
  for (double inflate : {1e-7, 1e-6, 1e-5}) {
    Box box(5);
    for (int i = 0; i < 5; ++i)
      box[i] = Interval(st[i]) + Interval(-inflate, inflate);
    try {
      KrawczykResult kr = krawczyk_step(sys, box);
      if (kr.verdict != Verdict::UniqueZero) continue;
      Box start(5);
      if (!try_intersect(box, kr.k_box, &start)) start = box;
      return refine_enclosure(sys, start, target_width);
    } catch (const DomainError&) {
    }
  }
  return std::nullopt;
}

// b(a) on the curve in doubles, by bisection of the slice sign change.
inline double curve_b_at(double a) {
  double lo = std::sqrt(2.0), hi = 2.5;
  for (int it = 0; it < 90; ++it) {
    double mid = 0.5 * (lo + hi);
    (eval_g(a, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Symmetric planar state (y3, y4, lambda, m) over the curve point at a.
inline std::array<double, 4> symmetric_family_at(double a) {
  double b = curve_b_at(a);
  double m = eval_m(a, b);
  double u = std::sqrt(a * a - 1.0), v = std::sqrt(b * b - 1.0);
  return {u, v, eval_lambda(a, b, m), m};
}

inline double offaxis_det_at(double a) {
  auto s = symmetric_family_at(a);
  auto blk = symmetric_offaxis_block(s[0], s[1], s[2], s[3]);
  return blk[0] * blk[3] - blk[1] * blk[2];
}

}  // namespace detail

// Certified enclosure of the symmetry-breaking point (y3, y4, lambda, m):
// scan the off-axis block determinant along the lifted curve, bisect its
// sign change, and certify the augmented locator system at the seed.
inline Box locate_pitchfork(const CampaignConfig& cfg = {}) {
  (void)cfg;
  const int n = 80;
  double lo = 1.02, hi = 1.45;
  double prev_a = lo, prev_det = detail::offaxis_det_at(lo);
  double bra = 0.0, brb = 0.0;
  bool found = false;
  for (int i = 1; i <= n && !found; ++i) {
    double a = detail::grid_edge(lo, hi, i, n);
    double det = detail::offaxis_det_at(a);
    if ((prev_det < 0.0) != (det < 0.0)) {
      bra = prev_a;
      brb = a;
      found = true;
    }
    prev_a = a;
    prev_det = det;
  }
  if (!found) throw std::runtime_error("no off-axis degeneracy in the window");
  double flo = detail::offaxis_det_at(bra);
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (bra + brb);
    double f = detail::offaxis_det_at(mid);
    if ((f < 0.0) == (flo < 0.0)) {
      bra = mid;
      flo = f;
    } else {
      brb = mid;
    }
  }
  auto seed = detail::symmetric_family_at(0.5 * (bra + brb));

  PitchforkLocatorSystem loc;
  for (double inflate : {1e-6, 1e-5, 1e-4}) {
    Box box(4);
    for (int i = 0; i < 4; ++i)
      box[i] = Interval(seed[i]) + Interval(-inflate, inflate);
    try {
      KrawczykResult kr = krawczyk_step(loc, box);
      if (kr.verdict != Verdict::UniqueZero) continue;
      Box start(4);
      if (!try_intersect(box, kr.k_box, &start)) start = box;
      return refine_enclosure(loc, start, 1e-12);
    } catch (const DomainError&) {
    }
  }
  throw std::runtime_error("symmetry-breaking point failed to certify");
}

// Numerical continuation of the asymmetric family from the symmetry-breaking
// point up to the target axis mass. The first hop breaks symmetry along the
// off-axis null direction with a short amplitude multistart; later hops use
// a secant predictor. Returns the polished double state with x3 < 0, or
// nothing when the target lies below the branch.
inline std::optional<std::array<double, 5>> asymmetric_branch_state(
    double target_m, const Box& pitchfork) {
  double y3 = pitchfork[0].mid(), y4 = pitchfork[1].mid();
  double lam = pitchfork[2].mid(), ms = pitchfork[3].mid();
  if (!(target_m > ms)) return std::nullopt;

  auto blk = symmetric_offaxis_block(y3, y4, lam, ms);
  double n0 = -blk[1], n1 = blk[0];
  double norm = std::hypot(n0, n1);
  n0 /= norm;
  n1 /= norm;
  if (n0 > 0.0) {  // canonical representative keeps x3 negative
    n0 = -n0;
    n1 = -n1;
  }

  double first = std::fmin(1e-3, target_m - ms);
  double m_here = ms + first;
  std::array<double, 5> st{};
  bool seeded = false;
  for (double amp : {2e-3, 5e-3, 1e-2, 2e-2, 3e-2, 5e-2, 1e-1}) {
    st = {amp * n0, y3, amp * n1, y4, lam};
    if (detail::newton_polish(PlanarSystem{Interval(m_here)}, &st) &&
        st[0] < -1e-5) {
      seeded = true;
      break;
    }
  }
  if (!seeded) return std::nullopt;

  // Adaptive walk. The branch leaves the pitchfork like sqrt(m - ms), so the
  // secant prediction is capped and failed steps shrink instead of aborting.
  std::array<double, 5> prev = st;
  double m_prev = m_here;
  double step = first;
  while (target_m - m_here > 1e-12) {
    step = std::fmin(step, target_m - m_here);
    double m_next =
        target_m - m_here <= step * (1.0 + 1e-9) ? target_m : m_here + step;
    std::array<double, 5> pred = st;
    if (m_here > m_prev) {
      double ratio = std::fmin((m_next - m_here) / (m_here - m_prev), 2.0);
      for (int i = 0; i < 5; ++i) pred[i] = st[i] + ratio * (st[i] - prev[i]);
    }
    if (detail::newton_polish(PlanarSystem{Interval(m_next)}, &pred) &&
        pred[0] < -1e-5) {
      prev = st;
      m_prev = m_here;
      st = pred;
      m_here = m_next;
      step = std::fmin(step * 1.5, 0.05);
    } else {
      step *= 0.5;
      if (step < 1e-6) return std::nullopt;
    }
  }
  return st;
}

struct PlanarSolution {
  Box state;  // (x3, y3, x4, y4, lambda)
  bool symmetric;
};

struct PlanarSolveResult {
  std::vector<PlanarSolution> solutions;
  bool at_fold = false;
  int unresolved = 0;
};

// Symmetric enumeration plus, above the symmetry-breaking mass, the
// asymmetric mirror pair. Each asymmetric state is certified independently
// and its three omitted residuals are re-checked over the enclosure.
inline PlanarSolveResult solve_planar_for_m(const Interval& m,
                                            const CampaignConfig& cfg = {}) {
  PlanarSolveResult out;
  SymmetricSolveResult sym = solve_symmetric_for_m(m, cfg);
  out.at_fold = sym.at_fold;
  out.unresolved = sym.unresolved;
  for (const SymmetricSolution& s : sym.solutions)
    out.solutions.push_back({s.state, true});

  Box pf = locate_pitchfork(cfg);
  if (m.mid() > pf[3].hi()) {
    auto st = asymmetric_branch_state(m.mid(), pf);
    bool placed = false;
    if (st) {
      PlanarSystem sys{m};
      if (auto enc = detail::certify_state(sys, *st)) {
        auto rest = planar_residual_check(
            std::array<Interval, 5>{(*enc)[0], (*enc)[1], (*enc)[2], (*enc)[3],
                                    (*enc)[4]},
            m);
        bool clean = true;
        for (const Interval& r : rest) clean = clean && r.contains(0.0);
        std::array<double, 5> mir{-(*st)[0], (*st)[1], -(*st)[2], (*st)[3],
                                  (*st)[4]};
        auto menc = detail::certify_state(sys, mir);
        if (clean && menc) {
          out.solutions.push_back({*enc, false});
          out.solutions.push_back({*menc, false});
          placed = true;
        }
      }
    }
    if (!placed) ++out.unresolved;
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const PlanarSolution& x, const PlanarSolution& y) {
              if (x.state[0].mid() != y.state[0].mid())
                return x.state[0].mid() < y.state[0].mid();
              return x.state[1].mid() < y.state[1].mid();
            });
  return out;
}

// Massless-base limit of the asymmetric family: continue in the base mass
// from the unit-mass solution down to zero, then certify in the swapped
// system and re-check its omitted residuals.
inline Box solve_swapped_limit(const CampaignConfig& cfg = {}) {
  Box pf = locate_pitchfork(cfg);
  auto at_unit = asymmetric_branch_state(1.0, pf);
  if (!at_unit) throw std::runtime_error("asymmetric branch lost before s-continuation");

  std::array<double, 5> st = *at_unit, prev = st;
  double s_here = 1.0, s_prev = 1.0;
  for (int k = 1; k <= 20; ++k) {
    double s_next = 1.0 - 0.05 * k;
    if (k == 20) s_next = 0.0;
    std::array<double, 5> pred = st;
    if (s_here < s_prev) {
      double ratio = (s_here - s_next) / (s_prev - s_here);
      for (int i = 0; i < 5; ++i) pred[i] = st[i] + ratio * (st[i] - prev[i]);
    }
    bool ok = s_next > 0.0
                  ? detail::newton_polish(MassRatioSystem{Interval(s_next)}, &pred)
                  : detail::newton_polish(SwappedPlanarSystem{}, &pred);
    if (!ok) throw std::runtime_error("s-continuation step failed");
    prev = st;
    s_prev = s_here;
    st = pred;
    s_here = s_next;
  }

  auto enc = detail::certify_state(SwappedPlanarSystem{}, st);
  if (!enc) throw std::runtime_error("massless-base state failed to certify");
  auto rest = swapped_residual_check(std::array<Interval, 5>{
      (*enc)[0], (*enc)[1], (*enc)[2], (*enc)[3], (*enc)[4]});
  for (const Interval& r : rest)
    if (!r.contains(0.0))
      throw std::runtime_error("massless-base residual check failed");
  return *enc;
}

struct TableRow {
  std::string label;
  double mass = 0.0;          // nominal axis mass; meaningless for the limit row
  bool massless_base = false; // swapped-limit row
  bool symmetric = false;
  Interval a, b;              // curve coordinates, symmetric rows only
  Box state;                  // certified planar enclosure
};

// The reference solution table: symmetric pairs at selected masses, the
// fold shape, the asymmetric family at several masses, and the massless
// limit. All rows certified.
inline std::vector<TableRow> reference_table(const CampaignConfig& cfg = {}) {
  std::vector<TableRow> rows;
  Box pf = locate_pitchfork(cfg);
  double pf_mass = pf[3].mid();

  auto add_sym = [&rows, &cfg](const std::string& tag, const Interval& m) {
    SymmetricSolveResult r = solve_symmetric_for_m(m, cfg);
    int k = 0;
    for (const SymmetricSolution& s : r.solutions) {
      ++k;
      rows.push_back({tag + "-s" + std::to_string(k), m.mid(), false, true, s.a,
                      s.b, s.state});
    }
  };
  auto add_asym = [&rows, &pf](const std::string& tag, double m) {
    auto st = asymmetric_branch_state(m, pf);
    if (!st) throw std::runtime_error("asymmetric row lost: " + tag);
    auto enc = detail::certify_state(PlanarSystem{Interval(m)}, *st);
    if (!enc) throw std::runtime_error("asymmetric row uncertified: " + tag);
    rows.push_back({tag + "-a", m, false, false, Interval(), Interval(), *enc});
  };

  add_sym("m0.4", Interval(0.4));
  add_sym("mpf", Interval(pf_mass));
  add_sym("m0.996", Interval(0.996));
  add_asym("m0.996", 0.996);
  add_sym("m1", Interval(1.0));
  add_asym("m1", 1.0);
  {
    CurveExtrema ex = find_curve_extrema(cfg);
    SymmetricSolveResult r = solve_symmetric_for_m(ex.m0, cfg);
    if (!r.at_fold || r.solutions.size() != 1)
      throw std::runtime_error("fold row did not come back alone");
    const SymmetricSolution& s = r.solutions.front();
    rows.push_back({"mpeak-s", ex.m0.mid(), false, true, s.a, s.b, s.state});
  }
  add_asym("m1.0027", 1.0027);
  add_asym("m2", 2.0);
  rows.push_back({"limit-a", 0.0, true, false, Interval(), Interval(),
                  solve_swapped_limit(cfg)});
  return rows;
}

}  // namespace kitecc
