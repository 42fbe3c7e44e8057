#include "choreo/model/triangle.hpp"

#include "choreo/rigor/rounding.hpp"

namespace choreo::model {

State<Interval> triangle_slice_interval(int K) {
  const rigor::RoundUpScope up;  // self-contained: enclosures need FE_UPWARD
  require_input(K >= 2, "triangle slice needs K >= 2");

  const Domain dom{K, 0, 1.0, 1.0, Rational{}};
  State<Interval> x = State<Interval>::zeros(dom);

  // 3^{1/3} and the side-normalization amplitudes 3^{-1/6}, 3^{-1/3}.
  const Interval cbrt3 = rigor::icbrt(Interval(3.0));
  const Interval amp = Interval(1.0) / rigor::isqrt(cbrt3);  // 3^{-1/6}
  const Interval w0 = Interval(1.0) / cbrt3;                 // 3^{-1/3}

  const Interval half_amp = amp * 0.5;
  // u1 = amp cos 2t, u2 = amp sin 2t, u3 = cos t (coefficients of e^{ikt}).
  x.u[0].at(2, 0) = {half_amp, Interval(0.0)};
  x.u[0].at(-2, 0) = {half_amp, Interval(0.0)};
  x.u[1].at(2, 0) = {Interval(0.0), -half_amp};
  x.u[1].at(-2, 0) = {Interval(0.0), half_amp};
  x.u[2].at(1, 0) = {Interval(0.5), Interval(0.0)};
  x.u[2].at(-1, 0) = {Interval(0.5), Interval(0.0)};

  for (int i = 0; i < 3; ++i) x.v[size_t(i)] = dt(x.u[size_t(i)]);

  x.w.at(0, 0) = {w0, Interval(0.0)};
  return x;
}

State<double> triangle_slice(int K) {
  return midpoint(triangle_slice_interval(K));
}

}  // namespace choreo::model
