#include "choreo/rigor/interval.hpp"

#include <cmath>

#include "choreo/rigor/rounding.hpp"

namespace choreo::rigor {

namespace {

// up(x*y*z) and down(x*y*z) for point doubles, used by the root verifiers.
double cube_up(double x) { return x * x * x; }
double cube_down(double x) { return -((-x) * x * x); }
double square_up(double x) { return x * x; }

}  // namespace

Interval isqrt(const Interval& a) {
  require_round_up();
  if (a.lo < 0.0) throw invariant_error("isqrt of an interval with negative part");
  // Upper endpoint: sqrt is correctly rounded by the hardware in FE_UPWARD.
  const double hi = std::sqrt(a.hi);
  // Lower endpoint: start from the (up-rounded) sqrt of lo and step down until
  // the square is provably <= lo.  up(y*y) <= lo implies y*y <= lo exactly.
  double y = std::sqrt(a.lo);
  int guard = 0;
  while (square_up(y) > a.lo) {
    y = std::nextafter(y, -1.0);
    if (y < 0.0) { y = 0.0; break; }
    if (++guard > 8) throw invariant_error("isqrt: lower-endpoint verification diverged");
  }
  return Interval::raw(y, hi);
}

Interval icbrt(const Interval& a) {
  require_round_up();
  // Odd function: reduce to non-negative endpoints.
  if (a.hi < 0.0) return -icbrt(-a);
  if (a.lo < 0.0) {
    const Interval pos = icbrt(Interval::raw(0.0, a.hi));
    const Interval neg = icbrt(Interval::raw(0.0, -a.lo));
    return Interval::raw(-neg.hi, pos.hi);
  }
  // Upper endpoint: need y with y^3 >= a.hi, certified by down(y^3) >= a.hi.
  double y = std::cbrt(a.hi);
  int guard = 0;
  while (cube_down(y) < a.hi) {
    y = std::nextafter(y, HUGE_VAL);
    if (++guard > 8) throw invariant_error("icbrt: upper-endpoint verification diverged");
  }
  // Lower endpoint: need z with z^3 <= a.lo, certified by up(z^3) <= a.lo.
  double z = std::cbrt(a.lo);
  guard = 0;
  while (cube_up(z) > a.lo) {
    z = std::nextafter(z, -1.0);
    if (z < 0.0) { z = 0.0; break; }
    if (++guard > 8) throw invariant_error("icbrt: lower-endpoint verification diverged");
  }
  return Interval::raw(z, y);
}

Interval ipi() {
  // 0x1.921fb54442d18p+1 is the double below pi; its successor is above.
  const double lo = 0x1.921fb54442d18p+1;
  return Interval::raw(lo, std::nextafter(lo, 4.0));
}

Interval ihalf_pi() {
  const Interval p = ipi();
  return Interval::raw(0.5 * p.lo, 0.5 * p.hi);  // scaling by 1/2 is exact
}

Interval itwo_pi() {
  const Interval p = ipi();
  return Interval::raw(2.0 * p.lo, 2.0 * p.hi);  // scaling by 2 is exact
}

Interval isqrt3() { return isqrt(Interval(3.0)); }

}  // namespace choreo::rigor
