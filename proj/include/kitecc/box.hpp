#pragma once

// Boxes are Eigen vectors of Interval; interval matrices are Eigen matrices.
// NumTraits makes Interval a first-class Eigen scalar so matrix products and
// expressions stay in rigorous arithmetic.

#include <utility>

#include "kitecc/interval.hpp"

#include <Eigen/Core>

namespace kitecc {
inline const Interval& conj(const Interval& x) { return x; }
inline const Interval& real(const Interval& x) { return x; }
inline Interval imag(const Interval&) { return Interval(0.0); }
inline Interval abs2(const Interval& x) { return pow_int(x, 2); }
}  // namespace kitecc

namespace Eigen {
template <>
struct NumTraits<kitecc::Interval> {
  using Real = kitecc::Interval;
  using NonInteger = kitecc::Interval;
  using Nested = kitecc::Interval;
  using Literal = kitecc::Interval;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 6,
    MulCost = 16,
  };
  static kitecc::Interval epsilon() {
    return kitecc::Interval(std::numeric_limits<double>::epsilon());
  }
  static kitecc::Interval dummy_precision() { return kitecc::Interval(1e-12); }
  static kitecc::Interval highest() {
    return kitecc::Interval(std::numeric_limits<double>::max());
  }
  static kitecc::Interval lowest() {
    return kitecc::Interval(std::numeric_limits<double>::lowest());
  }
  static int digits10() { return std::numeric_limits<double>::digits10; }
};
}  // namespace Eigen

namespace kitecc {

using Box = Eigen::Matrix<Interval, Eigen::Dynamic, 1>;
using IntervalMatrix = Eigen::Matrix<Interval, Eigen::Dynamic, Eigen::Dynamic>;

inline Eigen::VectorXd midpoint(const Box& b) {
  Eigen::VectorXd m(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) m[i] = b[i].mid();
  return m;
}

inline Box to_box(const Eigen::VectorXd& v) {
  Box b(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) b[i] = Interval(v[i]);
  return b;
}

inline IntervalMatrix to_interval(const Eigen::MatrixXd& m) {
  IntervalMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Interval(m(i, j));
  return r;
}

inline Eigen::MatrixXd midpoint(const IntervalMatrix& m) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).mid();
  return r;
}

inline double max_width(const Box& b) {
  double w = 0.0;
  for (Eigen::Index i = 0; i < b.size(); ++i) w = std::fmax(w, b[i].width());
  return w;
}

inline double box_volume(const Box& b) {
  double v = 1.0;
  for (Eigen::Index i = 0; i < b.size(); ++i) v *= b[i].width();
  return v;
}

inline bool box_contains(const Box& outer, const Box& inner) {
  for (Eigen::Index i = 0; i < outer.size(); ++i)
    if (!outer[i].contains(inner[i])) return false;
  return true;
}

inline bool box_strictly_contains(const Box& outer, const Box& inner) {
  for (Eigen::Index i = 0; i < outer.size(); ++i)
    if (!outer[i].strictly_contains(inner[i])) return false;
  return true;
}

inline bool try_intersect(const Box& a, const Box& b, Box* out) {
  out->resize(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!try_intersect(a[i], b[i], &(*out)[i])) return false;
  return true;
}

inline Box hull(const Box& a, const Box& b) {
  Box r(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
  return r;
}

// Split dimension: widest relative width (width over max(1,|mid|)), ties
// broken by raw width, then by lowest index.
inline Eigen::Index widest_dim(const Box& b) {
  Eigen::Index best = 0;
  double best_rel = -1.0, best_raw = -1.0;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    double raw = b[i].width();
    double rel = raw / std::fmax(1.0, std::fabs(b[i].mid()));
    if (rel > best_rel || (rel == best_rel && raw > best_raw)) {
      best = i;
      best_rel = rel;
      best_raw = raw;
    }
  }
  return best;
}

inline std::pair<Box, Box> bisect(const Box& b) {
  Eigen::Index d = widest_dim(b);
  Box left = b, right = b;
  double m = b[d].mid();
  left[d] = Interval::unchecked(b[d].lo(), m);
  right[d] = Interval::unchecked(m, b[d].hi());
  return {std::move(left), std::move(right)};
}

inline Box inflate(const Box& b, double rel, double abs_step) {
  Box r(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    double w = b[i].width();
    double pad = rel * w + abs_step;
    r[i] = Interval::unchecked(rnd::sub_down(b[i].lo(), pad),
                               rnd::add_up(b[i].hi(), pad));
  }
  return r;
}

}  // namespace kitecc
