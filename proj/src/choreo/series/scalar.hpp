#pragma once

#include <cmath>
#include <type_traits>

#include "choreo/rigor/cinterval.hpp"
#include "choreo/rigor/interval.hpp"

namespace choreo::series {

using rigor::Interval;

// Complex scalar over R = double (fast, approximate) or R = Interval (rigorous
// rectangle arithmetic).  The series/model templates are instantiated with both.
template <class R>
struct Cplx {
  R re{};
  R im{};
};

template <class R>
Cplx<R> operator-(const Cplx<R>& a) {
  return {-a.re, -a.im};
}
template <class R>
Cplx<R> operator+(const Cplx<R>& a, const Cplx<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
Cplx<R> operator-(const Cplx<R>& a, const Cplx<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
Cplx<R> operator*(const Cplx<R>& a, const Cplx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cplx<R> operator*(const R& s, const Cplx<R>& a) {
  return {s * a.re, s * a.im};
}
template <class R>
Cplx<R> operator*(const Cplx<R>& a, const R& s) {
  return s * a;
}
template <class R>
Cplx<R>& operator+=(Cplx<R>& a, const Cplx<R>& b) {
  a.re = a.re + b.re;
  a.im = a.im + b.im;
  return a;
}
template <class R>
Cplx<R>& operator-=(Cplx<R>& a, const Cplx<R>& b) {
  a.re = a.re - b.re;
  a.im = a.im - b.im;
  return a;
}

template <class R>
Cplx<R> conj(const Cplx<R>& a) {
  return {a.re, -a.im};
}
// Multiplication by i*s for real s (used by d/dt: coefficient k picks up i*k).
template <class R>
Cplx<R> mul_i_times(const Cplx<R>& a, double s) {
  if constexpr (std::is_same_v<R, double>) return {-a.im * s, a.re * s};
  else return {-a.im * Interval(s), a.re * Interval(s)};
}

inline Cplx<double> scale(const Cplx<double>& a, double s) { return {a.re * s, a.im * s}; }
inline Cplx<Interval> scale(const Cplx<Interval>& a, double s) {
  return {a.re * s, a.im * s};
}

// Modulus bound used by the norms: exact-ish for double, an enclosure for
// Interval (upper end is the rigorous bound).
inline double nrm_abs(const Cplx<double>& z) { return std::sqrt(z.re * z.re + z.im * z.im); }
inline Interval nrm_abs(const Cplx<Interval>& z) {
  return rigor::isqrt(rigor::square(z.re) + rigor::square(z.im));
}

// Norm scalars: max and an upper-bound extractor, shared by both paths.
inline double norm_max(double a, double b) { return std::fmax(a, b); }
inline Interval norm_max(const Interval& a, const Interval& b) { return rigor::imax(a, b); }
inline double upper(double x) { return x; }
inline double upper(const Interval& x) { return x.hi; }

template <class R>
bool is_zero(const Cplx<R>& z) {
  if constexpr (std::is_same_v<R, double>) return z.re == 0.0 && z.im == 0.0;
  else return z.re.lo == 0.0 && z.re.hi == 0.0 && z.im.lo == 0.0 && z.im.hi == 0.0;
}

// Conversions between the two scalar worlds.
inline Cplx<Interval> to_interval(const Cplx<double>& z) {
  return {Interval(z.re), Interval(z.im)};
}
inline Cplx<double> midpoint(const Cplx<Interval>& z) { return {z.re.mid(), z.im.mid()}; }

template <class R>
R real_from(double x) {
  if constexpr (std::is_same_v<R, double>) return x;
  else return Interval(x);
}

}  // namespace choreo::series
