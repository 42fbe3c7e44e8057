#pragma once

#include <cmath>
#include <string>

#include "choreo/common.hpp"

namespace choreo::rigor {

// Closed interval [lo, hi] of doubles.  All arithmetic assumes the ambient
// rounding mode is FE_UPWARD (see rounding.hpp); lower endpoints are produced by
// the negation trick  down(e) = -up(-e), which is exact because IEEE-754
// round-up and round-down are reflections of each other under negation.
//
// Infinite endpoints are legal (overflow saturates conservatively); NaN is not,
// and the checked constructor rejects it.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double x) : lo(x), hi(x) {
    if (std::isnan(x)) throw invariant_error("Interval: NaN endpoint");
  }
  Interval(double l, double h) : lo(l), hi(h) {
    if (std::isnan(l) || std::isnan(h) || l > h)
      throw invariant_error("Interval: invalid endpoints [" + std::to_string(l) +
                            ", " + std::to_string(h) + "]");
  }

  // Unchecked factory for internal code paths that construct from already
  // validated endpoints (hot loops, negation trick results).
  static Interval raw(double l, double h) {
    Interval r;
    r.lo = l;
    r.hi = h;
    return r;
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  double mid() const {
    // Any representable point of the interval qualifies as a midpoint.
    double m = lo + 0.5 * (hi - lo);
    if (m < lo) m = lo;
    if (m > hi) m = hi;
    return m;
  }
};

inline Interval operator-(const Interval& a) { return Interval::raw(-a.hi, -a.lo); }

inline Interval operator+(const Interval& a, const Interval& b) {
  // round-up mode: hi direct, lo via negation trick.
  return Interval::raw(-((-a.lo) + (-b.lo)), a.hi + b.hi);
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval::raw(-(b.hi + (-a.lo)), a.hi + (-b.lo));
}

namespace detail {
inline double max4(double a, double b, double c, double d) {
  return std::fmax(std::fmax(a, b), std::fmax(c, d));
}
}  // namespace detail

inline Interval operator*(const Interval& a, const Interval& b) {
  // up(x*y) for all four corners gives hi; down via up((-x)*y) = -down(x*y).
  const double hi = detail::max4(a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi);
  const double lo =
      -detail::max4((-a.lo) * b.lo, (-a.lo) * b.hi, (-a.hi) * b.lo, (-a.hi) * b.hi);
  return Interval::raw(lo, hi);
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && 0.0 <= b.hi)
    throw invariant_error("Interval division by an interval containing zero");
  const double hi = detail::max4(a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi);
  const double lo =
      -detail::max4((-a.lo) / b.lo, (-a.lo) / b.hi, (-a.hi) / b.lo, (-a.hi) / b.hi);
  return Interval::raw(lo, hi);
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

// Mixed double operands are treated as point intervals.
inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

// Enclosure of {|x| : x in a}.
inline Interval iabs(const Interval& a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return -a;
  return Interval::raw(0.0, std::fmax(-a.lo, a.hi));
}

// Enclosure of {x^2 : x in a}; tighter than a*a when a straddles zero.
inline Interval square(const Interval& a) {
  const Interval m = iabs(a);
  return Interval::raw(-((-m.lo) * m.lo), m.hi * m.hi);
}

// max |x| over the interval, and min |x| (distance of the interval to zero).
inline double mag(const Interval& a) { return std::fmax(std::fabs(a.lo), std::fabs(a.hi)); }
inline double mig(const Interval& a) {
  if (a.lo <= 0.0 && 0.0 <= a.hi) return 0.0;
  return std::fmin(std::fabs(a.lo), std::fabs(a.hi));
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval::raw(std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi));
}

inline Interval imax(const Interval& a, const Interval& b) {
  return Interval::raw(std::fmax(a.lo, b.lo), std::fmax(a.hi, b.hi));
}

inline Interval imin(const Interval& a, const Interval& b) {
  return Interval::raw(std::fmin(a.lo, b.lo), std::fmin(a.hi, b.hi));
}

inline double width(const Interval& a) { return a.hi + (-a.lo); }  // rounded up

// x^n for small non-negative integer n by repeated multiplication.
inline Interval pow_int(Interval base, unsigned n) {
  Interval r(1.0);
  while (n > 0) {
    if (n & 1u) r = r * base;
    base = base * base;
    n >>= 1u;
  }
  return r;
}

// Rigorous square root: requires a.lo >= 0.  The hardware sqrt instruction is
// correctly rounded in the ambient mode, so sqrt(hi) under FE_UPWARD is a valid
// upper endpoint; the lower endpoint is verified by squaring.
Interval isqrt(const Interval& a);

// Rigorous cube root (any sign), endpoints verified by cubing.
Interval icbrt(const Interval& a);

// Enclosures of pi, pi/2 and 2*pi (from the binary digits of pi).
Interval ipi();
Interval ihalf_pi();
Interval itwo_pi();

// Enclosure of sqrt(3).
Interval isqrt3();

// Rigorous cosine/sine over an interval argument (argument reduction + interval
// Taylor kernels + monotonicity analysis).
Interval icos(const Interval& x);
Interval isin(const Interval& x);

}  // namespace choreo::rigor
