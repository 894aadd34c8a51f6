#pragma once

// Closed binary64 intervals with outward rounding.
//
// Every operation guarantees the enclosure property: for all inputs drawn
// from the argument intervals, the true result lies in the returned interval.
// Directed rounding is done in software: the nearest-rounded result is
// computed first, then an error-free transform (TwoSum for +/-, fma residual
// for *, /, sqrt) decides whether the endpoint must be nudged one ulp.
// This keeps exact results exact: [2,2]*[3,3] == [6,6], x - x == [0,0] for
// thin x, sqrt([4,4]) == [2,2]. Exactness of zeros matters downstream, where
// structural cancellations in symmetric configurations must survive interval
// evaluation bit-for-bit.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kitecc {

// Raised when an operation leaves its mathematical domain (division by a
// zero-containing interval, sqrt of a negative interval, ...). The prover
// treats this as "unknown, subdivide", never as a fatal condition.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

namespace rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();
inline constexpr double kMinNormal = std::numeric_limits<double>::min();
inline constexpr double kDenormMin = std::numeric_limits<double>::denorm_min();

// One ulp toward +inf / -inf. Finite input only (callers handle overflow).
inline double next_up(double x) {
  if (std::isinf(x)) return x;
  if (x == 0.0) return kDenormMin;
  uint64_t b = std::bit_cast<uint64_t>(x);
  return std::bit_cast<double>((b >> 63) ? b - 1 : b + 1);
}
inline double next_down(double x) { return -next_up(-x); }

// TwoSum: s = RN(a+b); the rounding error a+b-s is exactly representable and
// exactly computed below (holds for all finite a, b with finite s).
inline double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s > 0 ? kInf : -kMax;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? next_up(s) : s;
}
inline double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s > 0 ? kMax : -kInf;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? next_down(s) : s;
}
inline double sub_up(double a, double b) { return add_up(a, -b); }
inline double sub_down(double a, double b) { return add_down(a, -b); }

// fma residual gives the exact sign of the multiplication error provided the
// rounded product is normal. Zero or subnormal products fall back to a
// conservative one-ulp step (except exact zero factors, which stay exact).
inline double mul_up(double a, double b) {
  double r = a * b;
  if (!std::isfinite(r)) return r > 0 ? kInf : -kMax;
  if (r == 0.0) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return (std::signbit(a) == std::signbit(b)) ? kDenormMin : 0.0;
  }
  if (std::fabs(r) < kMinNormal) return next_up(r);
  double e = std::fma(a, b, -r);
  return e > 0 ? next_up(r) : r;
}
inline double mul_down(double a, double b) {
  double r = a * b;
  if (!std::isfinite(r)) return r > 0 ? kMax : -kInf;
  if (r == 0.0) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return (std::signbit(a) == std::signbit(b)) ? 0.0 : -kDenormMin;
  }
  if (std::fabs(r) < kMinNormal) return next_down(r);
  double e = std::fma(a, b, -r);
  return e < 0 ? next_down(r) : r;
}

// Division residual a - r*b is exactly representable for normal r; its sign
// (flipped by sign(b)) tells which way RN rounded.
inline double div_up(double a, double b) {
  double r = a / b;
  if (!std::isfinite(r)) return r > 0 ? kInf : -kMax;
  if (r == 0.0) {
    if (a == 0.0) return 0.0;
    return (std::signbit(a) == std::signbit(b)) ? kDenormMin : 0.0;
  }
  if (std::fabs(r) < kMinNormal) return next_up(r);
  double e = std::fma(r, b, -a);  // r*b - a
  bool too_low = (b > 0) ? (e < 0) : (e > 0);
  return too_low ? next_up(r) : r;
}
inline double div_down(double a, double b) {
  double r = a / b;
  if (!std::isfinite(r)) return r > 0 ? kMax : -kInf;
  if (r == 0.0) {
    if (a == 0.0) return 0.0;
    return (std::signbit(a) == std::signbit(b)) ? 0.0 : -kDenormMin;
  }
  if (std::fabs(r) < kMinNormal) return next_down(r);
  double e = std::fma(r, b, -a);
  bool too_high = (b > 0) ? (e > 0) : (e < 0);
  return too_high ? next_down(r) : r;
}

// sqrt residual r*r - x is exact for normal x (r is then normal too).
inline double sqrt_up(double x) {  // pre: x >= 0
  if (x == 0.0) return 0.0;
  double r = std::sqrt(x);
  if (x < kMinNormal) return next_up(r);
  double e = std::fma(r, r, -x);
  return e < 0 ? next_up(r) : r;
}
inline double sqrt_down(double x) {  // pre: x >= 0
  if (x == 0.0) return 0.0;
  double r = std::sqrt(x);
  if (x < kMinNormal) return next_down(std::fmax(r, 0.0));
  double e = std::fma(r, r, -x);
  return e > 0 ? next_down(r) : r;
}

}  // namespace rnd

class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}
  Interval(double v) : lo_(v), hi_(v) {
    if (!std::isfinite(v)) throw DomainError("non-finite point interval");
  }
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw DomainError("invalid interval bounds");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  bool is_point() const { return lo_ == hi_; }
  bool is_zero() const { return lo_ == 0.0 && hi_ == 0.0; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool strictly_contains(const Interval& o) const {
    return lo_ < o.lo_ && o.hi_ < hi_;
  }

  // Upper bound on the true width (rigorous).
  double width() const { return rnd::sub_up(hi_, lo_); }

  // Representable point inside the interval, near the center.
  double mid() const {
    if (lo_ == hi_) return lo_;
    double m = 0.5 * (lo_ + hi_);
    if (!std::isfinite(m)) m = 0.5 * lo_ + 0.5 * hi_;
    if (m < lo_) m = lo_;
    if (m > hi_) m = hi_;
    return m;
  }

  // Largest absolute value of any point in the interval.
  double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
  // Smallest absolute value (0 if the interval straddles 0).
  double mig() const {
    if (contains_zero()) return 0.0;
    return std::fmin(std::fabs(lo_), std::fabs(hi_));
  }

  static Interval unchecked(double lo, double hi) {
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }
  static Interval entire() { return unchecked(-rnd::kInf, rnd::kInf); }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  double lo_, hi_;
};

inline Interval operator-(const Interval& a) {
  return Interval::unchecked(-a.hi(), -a.lo());
}

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval::unchecked(rnd::add_down(a.lo(), b.lo()),
                             rnd::add_up(a.hi(), b.hi()));
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval::unchecked(rnd::sub_down(a.lo(), b.hi()),
                             rnd::sub_up(a.hi(), b.lo()));
}

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace rnd;
  double l1 = mul_down(a.lo(), b.lo()), l2 = mul_down(a.lo(), b.hi());
  double l3 = mul_down(a.hi(), b.lo()), l4 = mul_down(a.hi(), b.hi());
  double u1 = mul_up(a.lo(), b.lo()), u2 = mul_up(a.lo(), b.hi());
  double u3 = mul_up(a.hi(), b.lo()), u4 = mul_up(a.hi(), b.hi());
  return Interval::unchecked(std::fmin(std::fmin(l1, l2), std::fmin(l3, l4)),
                             std::fmax(std::fmax(u1, u2), std::fmax(u3, u4)));
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("division by zero-containing interval");
  using namespace rnd;
  double l1 = div_down(a.lo(), b.lo()), l2 = div_down(a.lo(), b.hi());
  double l3 = div_down(a.hi(), b.lo()), l4 = div_down(a.hi(), b.hi());
  double u1 = div_up(a.lo(), b.lo()), u2 = div_up(a.lo(), b.hi());
  double u3 = div_up(a.hi(), b.lo()), u4 = div_up(a.hi(), b.hi());
  return Interval::unchecked(std::fmin(std::fmin(l1, l2), std::fmin(l3, l4)),
                             std::fmax(std::fmax(u1, u2), std::fmax(u3, u4)));
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

// sqrt with the clamping rule: an interval that merely touches negative
// territory is intersected with [0, inf) first. Only fully negative input is
// a domain error.
inline Interval sqrt(const Interval& a) {
  if (a.hi() < 0.0) throw DomainError("sqrt of negative interval");
  double lo = a.lo() < 0.0 ? 0.0 : a.lo();
  return Interval::unchecked(rnd::sqrt_down(lo), rnd::sqrt_up(a.hi()));
}

namespace detail {
// x^n for x >= 0 by square-and-multiply, monotone in each rounding direction.
inline double pow_up(double x, unsigned n) {
  double acc = 1.0, base = x;
  while (n) {
    if (n & 1) acc = rnd::mul_up(acc, base);
    n >>= 1;
    if (n) base = rnd::mul_up(base, base);
  }
  return acc;
}
inline double pow_down(double x, unsigned n) {
  double acc = 1.0, base = x;
  while (n) {
    if (n & 1) acc = rnd::mul_down(acc, base);
    n >>= 1;
    if (n) base = rnd::mul_down(base, base);
  }
  return acc;
}
}  // namespace detail

// Integer powers with even-power tightening: a sign-straddling interval
// squared starts at 0, not at a product of endpoints.
inline Interval pow_int(const Interval& a, int n) {
  if (n == 0) return Interval(1.0);
  if (n < 0) {
    if (a.contains_zero()) throw DomainError("negative power of zero-containing interval");
    return 1.0 / pow_int(a, -n);
  }
  unsigned un = static_cast<unsigned>(n);
  if (n % 2 == 1) {
    double lo = a.lo() < 0 ? -detail::pow_up(-a.lo(), un) : detail::pow_down(a.lo(), un);
    double hi = a.hi() < 0 ? -detail::pow_down(-a.hi(), un) : detail::pow_up(a.hi(), un);
    return Interval::unchecked(lo, hi);
  }
  if (a.lo() >= 0.0)
    return Interval::unchecked(detail::pow_down(a.lo(), un), detail::pow_up(a.hi(), un));
  if (a.hi() <= 0.0)
    return Interval::unchecked(detail::pow_down(-a.hi(), un), detail::pow_up(-a.lo(), un));
  return Interval::unchecked(0.0, detail::pow_up(a.mag(), un));
}

inline Interval abs(const Interval& a) {
  if (a.lo() >= 0.0) return a;
  if (a.hi() <= 0.0) return -a;
  return Interval::unchecked(0.0, a.mag());
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval::unchecked(std::fmin(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

// Empty intersection is a value (nullopt), not an error.
inline bool try_intersect(const Interval& a, const Interval& b, Interval* out) {
  double lo = std::fmax(a.lo(), b.lo());
  double hi = std::fmin(a.hi(), b.hi());
  if (lo > hi) return false;
  *out = Interval::unchecked(lo, hi);
  return true;
}

// Scalar shims so code templated on the scalar type also instantiates with
// plain double (used by floating predictors and preconditioners).
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow_int(double x, int n) { return std::pow(x, n); }
inline bool is_exact_zero(double x) { return x == 0.0; }
inline bool is_exact_zero(const Interval& x) { return x.is_zero(); }
inline double midpoint_of(double x) { return x; }
inline double midpoint_of(const Interval& x) { return x.mid(); }

}  // namespace kitecc
