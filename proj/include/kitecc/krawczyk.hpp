#pragma once

// Krawczyk test on a single box:
//
//   K = x0 - C F(x0) + (I - C DF([x])) ([x] - x0)
//
// with x0 the box midpoint and C a floating approximate inverse of the
// midpoint of the interval Jacobian. K strictly inside the box proves
// existence and uniqueness of a zero in the box; K disjoint from the box
// proves there is none. C only steers convergence: every verdict rests on
// outward-rounded interval arithmetic.

#include <Eigen/Dense>

#include "kitecc/autodiff.hpp"
#include "kitecc/box.hpp"
#include "kitecc/interval.hpp"

namespace kitecc {

enum class Verdict { UniqueZero, NoZero, Contracted, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::UniqueZero: return "UniqueZero";
    case Verdict::NoZero: return "NoZero";
    case Verdict::Contracted: return "Contracted";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

struct KrawczykResult {
  Verdict verdict = Verdict::Unknown;
  Box k_box;           // the computed K; meaningful unless verdict is Unknown
  Eigen::VectorXd x0;  // expansion point (box midpoint)
  Eigen::MatrixXd C;   // preconditioner used, recorded for audit
};

// Floating approximate inverse via LU with partial pivoting. Returns false
// when the result is not finite (singular or overflowing matrix).
inline bool invert_approx(const Eigen::MatrixXd& a, Eigen::MatrixXd* inv) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  *inv = lu.inverse();
  return inv->allFinite();
}

template <class F>
bool make_preconditioner(const F& f, const Box& box, Eigen::MatrixXd* c) {
  IntervalMatrix df = jacobian(f, box);
  return invert_approx(midpoint(df), c);
}

template <class F>
KrawczykResult krawczyk_step(const F& f, const Box& box) {
  static_assert(F::kIn == F::kOut, "krawczyk_step needs a square system");
  const int n = F::kIn;
  KrawczykResult r;
  r.x0 = midpoint(box);
  try {
    IntervalMatrix df = jacobian(f, box);
    Box fx0 = eval_thin(f, r.x0);
    if (!invert_approx(midpoint(df), &r.C)) return r;  // Unknown

    IntervalMatrix ci = to_interval(r.C);
    IntervalMatrix residual = -(ci * df);
    for (int i = 0; i < n; ++i) residual(i, i) += Interval(1.0);

    Box centered(n);
    for (int i = 0; i < n; ++i) centered[i] = box[i] - r.x0[i];
    r.k_box = to_box(r.x0) - ci * fx0 + residual * centered;
  } catch (const DomainError&) {
    return r;  // Unknown
  }

  if (box_strictly_contains(box, r.k_box)) {
    r.verdict = Verdict::UniqueZero;
  } else {
    Box unused(n);
    r.verdict = try_intersect(r.k_box, box, &unused) ? Verdict::Contracted
                                                     : Verdict::NoZero;
  }
  return r;
}

// Shrinks a box already known to contain a unique zero by intersecting with
// K until the target width is reached or progress falls under 1% per sweep.
// Every zero of f in the input box lies in K, so the intersection never
// loses it.
template <class F>
Box refine_enclosure(const F& f, Box box, double target_width = 1e-12) {
  for (int it = 0; it < 80; ++it) {
    double w = max_width(box);
    if (w <= target_width) break;
    KrawczykResult r = krawczyk_step(f, box);
    if (r.verdict == Verdict::Unknown || r.verdict == Verdict::NoZero) break;
    Box next(box.size());
    if (!try_intersect(box, r.k_box, &next)) break;
    double w2 = max_width(next);
    box = next;
    if (w2 > 0.99 * w) break;
  }
  return box;
}

}  // namespace kitecc
