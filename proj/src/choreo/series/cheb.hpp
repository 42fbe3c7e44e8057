#pragma once

#include <vector>

#include "choreo/common.hpp"
#include "choreo/series/scalar.hpp"

namespace choreo::series {

// Chebyshev series  psi(s) = sum_{n>=0} c_n T_n(s)  on s in [-1,1], with complex
// coefficients.  The Banach-algebra norm is the weighted coefficient sum
//   x_norm(psi) = |c_0| + 2 * sum_{n>=1} |c_n|,
// which is unital and submultiplicative for the Chebyshev product
//   T_n T_m = (T_{n+m} + T_{|n-m|}) / 2.
template <class R>
struct ChebSeries {
  std::vector<Cplx<R>> c;

  ChebSeries() = default;
  explicit ChebSeries(int degree) : c(degree >= 0 ? size_t(degree) + 1 : 0) {}

  int degree() const { return int(c.size()) - 1; }
  bool empty() const { return c.empty(); }

  static ChebSeries constant(const Cplx<R>& v) {
    ChebSeries s(0);
    s.c[0] = v;
    return s;
  }
  static ChebSeries constant_real(double v) {
    return constant(Cplx<R>{real_from<R>(v), real_from<R>(0.0)});
  }
};

template <class R>
ChebSeries<R> operator+(const ChebSeries<R>& a, const ChebSeries<R>& b) {
  ChebSeries<R> r(std::max(a.degree(), b.degree()));
  for (size_t n = 0; n < a.c.size(); ++n) r.c[n] += a.c[n];
  for (size_t n = 0; n < b.c.size(); ++n) r.c[n] += b.c[n];
  return r;
}

template <class R>
ChebSeries<R> operator-(const ChebSeries<R>& a, const ChebSeries<R>& b) {
  ChebSeries<R> r(std::max(a.degree(), b.degree()));
  for (size_t n = 0; n < a.c.size(); ++n) r.c[n] += a.c[n];
  for (size_t n = 0; n < b.c.size(); ++n) r.c[n] -= b.c[n];
  return r;
}

template <class R>
ChebSeries<R> operator-(const ChebSeries<R>& a) {
  ChebSeries<R> r(a.degree());
  for (size_t n = 0; n < a.c.size(); ++n) r.c[n] = -a.c[n];
  return r;
}

template <class R>
ChebSeries<R> operator*(const Cplx<R>& s, const ChebSeries<R>& a) {
  ChebSeries<R> r(a.degree());
  for (size_t n = 0; n < a.c.size(); ++n) r.c[n] = s * a.c[n];
  return r;
}

template <class R>
ChebSeries<R> scale_real(const ChebSeries<R>& a, double s) {
  ChebSeries<R> r(a.degree());
  for (size_t n = 0; n < a.c.size(); ++n) r.c[n] = scale(a.c[n], s);
  return r;
}

// Chebyshev product: each pair (i,j) contributes c_i d_j / 2 to orders i+j and
// |i-j| (the uniform rule; i=0 or j=0 lands both halves on the same order).
template <class R>
ChebSeries<R> operator*(const ChebSeries<R>& a, const ChebSeries<R>& b) {
  if (a.empty() || b.empty()) return ChebSeries<R>();
  ChebSeries<R> r(a.degree() + b.degree());
  for (int i = 0; i <= a.degree(); ++i) {
    for (int j = 0; j <= b.degree(); ++j) {
      const Cplx<R> half = scale(a.c[size_t(i)] * b.c[size_t(j)], 0.5);
      r.c[size_t(i + j)] += half;
      r.c[size_t(std::abs(i - j))] += half;
    }
  }
  return r;
}

template <class R>
ChebSeries<R>& operator+=(ChebSeries<R>& a, const ChebSeries<R>& b) {
  return a = a + b;
}
template <class R>
ChebSeries<R>& operator-=(ChebSeries<R>& a, const ChebSeries<R>& b) {
  return a = a - b;
}

// x_norm(psi) = |c_0| + 2 sum_{n>=1} |c_n|.  Returns double (estimate) or
// Interval (enclosure; use .hi as the rigorous upper bound).
template <class R>
R x_norm(const ChebSeries<R>& a) {
  R s = real_from<R>(0.0);
  for (int n = 0; n <= a.degree(); ++n) {
    const R m = nrm_abs(a.c[size_t(n)]);
    s = s + (n == 0 ? m : m + m);
  }
  return s;
}

// Clenshaw evaluation at s (double or Interval scalar type matching R).
template <class R>
Cplx<R> eval(const ChebSeries<R>& a, const R& s) {
  if (a.empty()) return Cplx<R>{};
  Cplx<R> b1{}, b2{};
  const R two_s = s + s;
  for (int n = a.degree(); n >= 1; --n) {
    const Cplx<R> tmp = two_s * b1 - b2 + a.c[size_t(n)];
    b2 = b1;
    b1 = tmp;
  }
  return s * b1 - b2 + a.c[0];
}

// Evaluation at the endpoints: T_n(1) = 1 and T_n(-1) = (-1)^n, so these are the
// plain and alternating coefficient sums, accumulated in ascending order (the
// canonical order relied upon by the endpoint exactization).
template <class R>
Cplx<R> eval_at_one(const ChebSeries<R>& a) {
  Cplx<R> s{};
  for (int n = 0; n <= a.degree(); ++n) s += a.c[size_t(n)];
  return s;
}

template <class R>
Cplx<R> eval_at_minus_one(const ChebSeries<R>& a) {
  Cplx<R> s{};
  for (int n = 0; n <= a.degree(); ++n)
    s += (n % 2 == 0) ? a.c[size_t(n)] : -a.c[size_t(n)];
  return s;
}

template <class R>
ChebSeries<R> truncated(const ChebSeries<R>& a, int degree) {
  ChebSeries<R> r(degree);
  for (int n = 0; n <= std::min(degree, a.degree()); ++n) r.c[size_t(n)] = a.c[size_t(n)];
  return r;
}

inline ChebSeries<Interval> to_interval(const ChebSeries<double>& a) {
  ChebSeries<Interval> r(a.degree());
  for (size_t n = 0; n < a.c.size(); ++n) r.c[n] = to_interval(a.c[n]);
  return r;
}

}  // namespace choreo::series
