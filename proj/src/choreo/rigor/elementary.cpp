#include "choreo/rigor/elementary.hpp"

#include <array>
#include <cmath>

#include "choreo/rigor/cinterval.hpp"
#include "choreo/rigor/rounding.hpp"

namespace choreo::rigor {

namespace {

// Interval tables 1/(2m)! and 1/(2m+1)! for the Taylor kernels.  Built lazily:
// the first caller holds FE_UPWARD (enforced at the icos/isin entry points), so
// the divisions are rigorous.
struct FactTables {
  std::array<Interval, 13> inv_even;  // 1/(2m)!,   m = 0..12
  std::array<Interval, 13> inv_odd;   // 1/(2m+1)!, m = 0..12
};

const FactTables& fact_tables() {
  static const FactTables t = [] {
    FactTables ft;
    ft.inv_even[0] = Interval(1.0);
    ft.inv_odd[0] = Interval(1.0);
    for (int m = 1; m <= 12; ++m) {
      // (2m)! = (2m-2)! * (2m-1) * (2m); both factors are small exact integers.
      ft.inv_even[m] = ft.inv_even[m - 1] / Interval(double((2 * m - 1) * (2 * m)));
      ft.inv_odd[m] = ft.inv_odd[m - 1] / Interval(double((2 * m) * (2 * m + 1)));
    }
    return ft;
  }();
  return t;
}

// cos on |r| <= 0.8 by the degree-22 Taylor polynomial; the series alternates
// with strictly decreasing terms there, so the first omitted term bounds the
// remainder.
Interval cos_kernel(const Interval& r) {
  const auto& ft = fact_tables();
  const Interval z = square(r);
  Interval acc = ft.inv_even[11] * ((11 % 2) ? -1.0 : 1.0);
  for (int m = 10; m >= 0; --m)
    acc = acc * z + ft.inv_even[m] * ((m % 2) ? -1.0 : 1.0);
  const double e = (pow_int(Interval(mag(z)), 12) * ft.inv_even[12]).hi;
  return acc + Interval::raw(-e, e);
}

// sin on |r| <= 0.8: r * (degree-22 polynomial in r^2) with the same remainder
// argument.
Interval sin_kernel(const Interval& r) {
  const auto& ft = fact_tables();
  const Interval z = square(r);
  Interval acc = ft.inv_odd[11] * ((11 % 2) ? -1.0 : 1.0);
  for (int m = 10; m >= 0; --m)
    acc = acc * z + ft.inv_odd[m] * ((m % 2) ? -1.0 : 1.0);
  const double e = (pow_int(Interval(mag(z)), 12) * ft.inv_odd[12]).hi;
  return r * (acc + Interval::raw(-e, e));
}

// Tight enclosure of cos(t) for a point double t with |t| <= 32: quadrant
// reduction by an interval pi/2 followed by the Taylor kernels.
Interval cos_point(double t) {
  if (!std::isfinite(t) || std::fabs(t) > 32.0)
    throw invariant_error("cos_point: argument out of the reduced range");
  const long j = std::lround(t / 1.5707963267948966);
  const Interval r = Interval(t) - Interval(double(j)) * ihalf_pi();
  if (mag(r) > 0.8) throw invariant_error("cos_point: quadrant reduction failed");
  switch (((j % 4) + 4) % 4) {
    case 0: return cos_kernel(r);
    case 1: return -sin_kernel(r);
    case 2: return -cos_kernel(r);
    default: return sin_kernel(r);
  }
}

Interval clamp_unit(const Interval& v) {
  return Interval::raw(std::fmax(v.lo, -1.0), std::fmin(v.hi, 1.0));
}

}  // namespace

Interval icos(const Interval& x) {
  require_round_up();
  if (!std::isfinite(x.lo) || !std::isfinite(x.hi))
    return Interval::raw(-1.0, 1.0);
  if (width(x) >= itwo_pi().lo) return Interval::raw(-1.0, 1.0);

  // Shift by a whole number of periods so the argument lands within ~3*pi of 0.
  const double n = std::nearbyint(x.mid() / 6.283185307179586);
  Interval xr = x;
  if (n != 0.0) {
    if (std::fabs(n) > 1e15) return Interval::raw(-1.0, 1.0);
    xr = x - Interval(n) * itwo_pi();
  }
  if (mag(xr) > 10.0) return Interval::raw(-1.0, 1.0);

  Interval res = hull(cos_point(xr.lo), cos_point(xr.hi));
  // Interior extrema of cos at integer multiples of pi.
  const long m_lo = long(std::floor(xr.lo / 3.14159)) - 1;
  const long m_hi = long(std::ceil(xr.hi / 3.14159)) + 1;
  for (long m = m_lo; m <= m_hi; ++m) {
    const Interval crit = Interval(double(m)) * ipi();
    if (crit.hi >= xr.lo && crit.lo <= xr.hi)
      res = hull(res, Interval((m % 2 == 0) ? 1.0 : -1.0));
  }
  return clamp_unit(res);
}

Interval isin(const Interval& x) {
  // sin(t) = cos(t - pi/2); the pi/2 enclosure costs about one ulp of width.
  return icos(x - ihalf_pi());
}

CInterval exp_phase(long long k) {
  const long long r = ((k % 3) + 3) % 3;
  if (r == 0) return CInterval(1.0, 0.0);
  const Interval half_sqrt3 = isqrt3() * 0.5;  // exact halving
  if (r == 1) return CInterval(Interval(-0.5), -half_sqrt3);  // angle 4*pi/3
  return CInterval(Interval(-0.5), half_sqrt3);               // angle 8*pi/3 == 2*pi/3
}

Interval fourier_tail_weight_sum(int m, const Interval& q) {
  require_round_up();
  require_invariant(q.lo > 0.0 && q.hi < 1.0,
                    "fourier_tail_weight_sum: q must lie in (0,1)");
  const Interval one(1.0);
  const Interval omq = one - q;
  switch (m) {
    case 0: return (one + q) / omq;
    case 1: return 2.0 * q / square(omq);
    case 2: return 2.0 * q * (one + q) / (square(omq) * omq);
    case 3:
      return 2.0 * q * (one + 4.0 * q + square(q)) / square(square(omq));
    default:
      throw invariant_error("fourier_tail_weight_sum: m must be in {0,1,2,3}");
  }
}

}  // namespace choreo::rigor
