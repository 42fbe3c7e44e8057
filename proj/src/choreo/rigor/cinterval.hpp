#pragma once

#include "choreo/rigor/interval.hpp"

namespace choreo::rigor {

// Rectangular complex interval: the set {x + iy : x in re, y in im}.
struct CInterval {
  Interval re, im;

  CInterval() = default;
  explicit CInterval(double x) : re(x), im(0.0) {}
  CInterval(double x, double y) : re(x), im(y) {}
  CInterval(const Interval& r, const Interval& i) : re(r), im(i) {}

  bool contains_zero() const { return re.contains(0.0) && im.contains(0.0); }
};

inline CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }

inline CInterval operator+(const CInterval& a, const CInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline CInterval operator-(const CInterval& a, const CInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
inline CInterval operator*(const CInterval& a, const CInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval operator*(const Interval& a, const CInterval& b) {
  return {a * b.re, a * b.im};
}
inline CInterval operator*(const CInterval& a, const Interval& b) { return b * a; }
inline CInterval operator*(double a, const CInterval& b) { return Interval(a) * b; }
inline CInterval operator*(const CInterval& a, double b) { return Interval(b) * a; }
inline CInterval operator/(const CInterval& a, const Interval& b) {
  return {a.re / b, a.im / b};
}

inline CInterval& operator+=(CInterval& a, const CInterval& b) { return a = a + b; }
inline CInterval& operator-=(CInterval& a, const CInterval& b) { return a = a - b; }

inline CInterval conj(const CInterval& a) { return {a.re, -a.im}; }

// Multiplication by i and by -i (exact).
inline CInterval mul_i(const CInterval& a) { return {-a.im, a.re}; }
inline CInterval mul_minus_i(const CInterval& a) { return {a.im, -a.re}; }

// Enclosure of the modulus |z| over the rectangle.
inline Interval cabs(const CInterval& z) {
  return isqrt(square(z.re) + square(z.im));
}

// Upper bound on the modulus (the quantity used by the norms).
inline double cabs_upper(const CInterval& z) { return cabs(z).hi; }

// Enclosure of exp(i * 4*pi*k/3)  =  third-root-of-unity phase of the shift
// operator at Fourier index k: exact (1,0) when 3 | k, otherwise
// (-1/2, -+sqrt(3)/2) with a rigorous sqrt(3) enclosure.
CInterval exp_phase(long long k);

}  // namespace choreo::rigor
