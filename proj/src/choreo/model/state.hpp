#pragma once

#include <array>
#include <vector>

#include "choreo/common.hpp"
#include "choreo/rigor/interval.hpp"
#include "choreo/series/cheb.hpp"
#include "choreo/series/fouriercheb.hpp"
#include "choreo/series/layout.hpp"

namespace choreo::model {

using rigor::Interval;
using series::ChebSeries;
using series::Cplx;
using series::FourierCheb;
using series::Parity;

// Exact rational Fourier weight nu = num/den > 1.
struct Rational {
  long long num = 11;
  long long den = 10;

  double value() const { return double(num) / double(den); }
  Interval enclosure() const { return Interval(double(num)) / Interval(double(den)); }
};

// Discretization frame: Fourier modes |k| <= K, Chebyshev degree <= N, with the
// frequency Omega sweeping [omega_lo, omega_hi] as the Chebyshev variable s
// sweeps [-1, 1].  A point frame (omega_lo == omega_hi, usually with N == 0)
// carries one fixed-frequency slice, as used by the per-node Newton solves.
struct Domain {
  int K = 0;
  int N = 0;
  double omega_lo = 0.0;
  double omega_hi = 1.0;
  Rational nu{};

  bool is_point() const { return omega_lo == omega_hi; }
};

inline bool same_frame(const Domain& a, const Domain& b) {
  return a.K == b.K && a.N == b.N && a.omega_lo == b.omega_lo &&
         a.omega_hi == b.omega_hi;
}

inline double s_of_omega(const Domain& d, double omega) {
  return (2.0 * omega - (d.omega_hi + d.omega_lo)) / (d.omega_hi - d.omega_lo);
}

inline double omega_of_s(const Domain& d, double s) {
  return 0.5 * (d.omega_hi + d.omega_lo) + 0.5 * (d.omega_hi - d.omega_lo) * s;
}

// Omega as a Chebyshev series: (hi+lo)/2 + (hi-lo)/2 * T_1(s); a constant for a
// point frame.  The Interval instantiation encloses the affine map.
template <class R>
ChebSeries<R> omega_series(const Domain& d) {
  if (d.is_point()) return ChebSeries<R>::constant_real(d.omega_lo);
  ChebSeries<R> s(1);
  if constexpr (std::is_same_v<R, Interval>) {
    s.c[0].re = (Interval(d.omega_hi) + Interval(d.omega_lo)) * 0.5;
    s.c[1].re = (Interval(d.omega_hi) - Interval(d.omega_lo)) * 0.5;
  } else {
    s.c[0].re = 0.5 * (d.omega_hi + d.omega_lo);
    s.c[1].re = 0.5 * (d.omega_hi - d.omega_lo);
  }
  return s;
}

// Symmetry classes of the vector components: u = (even cos, even sin, odd cos)
// and v = du/dt = (even sin, even cos, odd sin); w keeps all even modes.
inline constexpr std::array<Parity, 3> kUParity{Parity::EvenCos, Parity::EvenSin,
                                                Parity::OddCos};
inline constexpr std::array<Parity, 3> kVParity{Parity::EvenSin, Parity::EvenCos,
                                                Parity::OddSin};

// The unknown x = (a, beta, alpha, u, v, w): three real Chebyshev scalars, the
// position and velocity triples, and the inverse mutual distance w.
template <class R>
struct State {
  Domain dom;
  ChebSeries<R> a, beta, alpha;
  std::array<FourierCheb<R>, 3> u, v;
  FourierCheb<R> w;

  static State zeros(const Domain& d) {
    State x;
    x.dom = d;
    x.a = ChebSeries<R>(d.N);
    x.beta = ChebSeries<R>(d.N);
    x.alpha = ChebSeries<R>(d.N);
    for (int i = 0; i < 3; ++i) {
      x.u[size_t(i)] = FourierCheb<R>(d.K, d.N);
      x.v[size_t(i)] = FourierCheb<R>(d.K, d.N);
    }
    x.w = FourierCheb<R>(d.K, d.N);
    return x;
  }
};

// The residual F(x) = (eta1, eta2, gamma, g, f, h).  The periodic components
// keep their exact product support, which generally exceeds the frame of the
// state they came from; g_j carries the symmetry class of u_j, f_j that of v_j,
// and h that of w.
template <class R>
struct Residual {
  ChebSeries<R> eta1, eta2, gamma;
  std::array<FourierCheb<R>, 3> g, f;
  FourierCheb<R> h;
};

// Component-indexed access following the shared layout order (periodic slots).
template <class R>
FourierCheb<R>& comp_series(State<R>& x, int comp) {
  switch (comp) {
    case series::CompU1: return x.u[0];
    case series::CompU2: return x.u[1];
    case series::CompU3: return x.u[2];
    case series::CompV1: return x.v[0];
    case series::CompV2: return x.v[1];
    case series::CompV3: return x.v[2];
    case series::CompW: return x.w;
    default: throw invariant_error("comp_series: not a periodic component");
  }
}

template <class R>
const FourierCheb<R>& comp_series(const State<R>& x, int comp) {
  return comp_series(const_cast<State<R>&>(x), comp);
}

template <class R>
ChebSeries<R>& comp_scalar(State<R>& x, int comp) {
  switch (comp) {
    case series::CompA: return x.a;
    case series::CompBeta: return x.beta;
    case series::CompAlpha: return x.alpha;
    default: throw invariant_error("comp_scalar: not a scalar component");
  }
}

template <class R>
const ChebSeries<R>& comp_scalar(const State<R>& x, int comp) {
  return comp_scalar(const_cast<State<R>&>(x), comp);
}

// Equation slots share the component order: eta1/eta2/gamma occupy the scalar
// slots, g the u slots, f the v slots, h the w slot.
template <class R>
FourierCheb<R>& comp_series(Residual<R>& r, int comp) {
  switch (comp) {
    case series::CompU1: return r.g[0];
    case series::CompU2: return r.g[1];
    case series::CompU3: return r.g[2];
    case series::CompV1: return r.f[0];
    case series::CompV2: return r.f[1];
    case series::CompV3: return r.f[2];
    case series::CompW: return r.h;
    default: throw invariant_error("comp_series: not a periodic equation");
  }
}

template <class R>
const FourierCheb<R>& comp_series(const Residual<R>& r, int comp) {
  return comp_series(const_cast<Residual<R>&>(r), comp);
}

template <class R>
ChebSeries<R>& comp_scalar(Residual<R>& r, int comp) {
  switch (comp) {
    case series::CompA: return r.eta1;
    case series::CompBeta: return r.eta2;
    case series::CompAlpha: return r.gamma;
    default: throw invariant_error("comp_scalar: not a scalar equation");
  }
}

template <class R>
const ChebSeries<R>& comp_scalar(const Residual<R>& r, int comp) {
  return comp_scalar(const_cast<Residual<R>&>(r), comp);
}

template <class R>
State<R> operator+(const State<R>& x, const State<R>& y) {
  require_invariant(same_frame(x.dom, y.dom), "state +: frame mismatch");
  State<R> r = x;
  r.a += y.a;
  r.beta += y.beta;
  r.alpha += y.alpha;
  for (int i = 0; i < 3; ++i) {
    r.u[size_t(i)] = x.u[size_t(i)] + y.u[size_t(i)];
    r.v[size_t(i)] = x.v[size_t(i)] + y.v[size_t(i)];
  }
  r.w = x.w + y.w;
  return r;
}

template <class R>
State<R> operator-(const State<R>& x, const State<R>& y) {
  require_invariant(same_frame(x.dom, y.dom), "state -: frame mismatch");
  State<R> r = x;
  r.a -= y.a;
  r.beta -= y.beta;
  r.alpha -= y.alpha;
  for (int i = 0; i < 3; ++i) {
    r.u[size_t(i)] = x.u[size_t(i)] - y.u[size_t(i)];
    r.v[size_t(i)] = x.v[size_t(i)] - y.v[size_t(i)];
  }
  r.w = x.w - y.w;
  return r;
}

template <class R>
State<R> scale(const State<R>& x, double s) {
  State<R> r = x;
  r.a = scale_real(x.a, s);
  r.beta = scale_real(x.beta, s);
  r.alpha = scale_real(x.alpha, s);
  for (int i = 0; i < 3; ++i) {
    r.u[size_t(i)] = scale_real(x.u[size_t(i)], s);
    r.v[size_t(i)] = scale_real(x.v[size_t(i)], s);
  }
  r.w = scale_real(x.w, s);
  return r;
}

template <class R>
Residual<R> operator-(const Residual<R>& x, const Residual<R>& y) {
  Residual<R> r;
  r.eta1 = x.eta1 - y.eta1;
  r.eta2 = x.eta2 - y.eta2;
  r.gamma = x.gamma - y.gamma;
  for (int i = 0; i < 3; ++i) {
    r.g[size_t(i)] = x.g[size_t(i)] - y.g[size_t(i)];
    r.f[size_t(i)] = x.f[size_t(i)] - y.f[size_t(i)];
  }
  r.h = x.h - y.h;
  return r;
}

template <class R>
Residual<R> scale(const Residual<R>& x, double s) {
  Residual<R> r;
  r.eta1 = scale_real(x.eta1, s);
  r.eta2 = scale_real(x.eta2, s);
  r.gamma = scale_real(x.gamma, s);
  for (int i = 0; i < 3; ++i) {
    r.g[size_t(i)] = scale_real(x.g[size_t(i)], s);
    r.f[size_t(i)] = scale_real(x.f[size_t(i)], s);
  }
  r.h = scale_real(x.h, s);
  return r;
}

// Product-space norm: the sum of the component norms (x_norm for the scalars,
// nu_norm for the periodic components).  nu_pow must cover the largest Fourier
// index present.
template <class R>
R state_norm(const State<R>& x, const std::vector<R>& nu_pow) {
  R s = x_norm(x.a) + x_norm(x.beta) + x_norm(x.alpha);
  for (int i = 0; i < 3; ++i)
    s = s + nu_norm(x.u[size_t(i)], nu_pow) + nu_norm(x.v[size_t(i)], nu_pow);
  return s + nu_norm(x.w, nu_pow);
}

template <class R>
R residual_norm(const Residual<R>& r, const std::vector<R>& nu_pow) {
  R s = x_norm(r.eta1) + x_norm(r.eta2) + x_norm(r.gamma);
  for (int i = 0; i < 3; ++i)
    s = s + nu_norm(r.g[size_t(i)], nu_pow) + nu_norm(r.f[size_t(i)], nu_pow);
  return s + nu_norm(r.h, nu_pow);
}

inline double scalar_reality_residual(const ChebSeries<double>& a) {
  double worst = 0.0;
  for (const auto& c : a.c) worst = std::fmax(worst, std::fabs(c.im));
  return worst;
}
inline double scalar_reality_residual(const ChebSeries<Interval>& a) {
  double worst = 0.0;
  for (const auto& c : a.c)
    worst = std::fmax(worst, std::fmax(std::fabs(c.im.lo), std::fabs(c.im.hi)));
  return worst;
}

// Largest coefficient magnitude violating any symmetry-class constraint.
template <class R>
double off_class_residual(const State<R>& x) {
  double worst = scalar_reality_residual(x.a);
  worst = std::fmax(worst, scalar_reality_residual(x.beta));
  worst = std::fmax(worst, scalar_reality_residual(x.alpha));
  for (int i = 0; i < 3; ++i) {
    worst = std::fmax(worst, off_class_residual(x.u[size_t(i)], kUParity[size_t(i)]));
    worst = std::fmax(worst, off_class_residual(x.v[size_t(i)], kVParity[size_t(i)]));
  }
  return std::fmax(worst, off_class_residual(x.w, Parity::EvenGeneral));
}

template <class R>
double off_class_residual(const Residual<R>& r) {
  double worst = scalar_reality_residual(r.eta1);
  worst = std::fmax(worst, scalar_reality_residual(r.eta2));
  worst = std::fmax(worst, scalar_reality_residual(r.gamma));
  for (int i = 0; i < 3; ++i) {
    worst = std::fmax(worst, off_class_residual(r.g[size_t(i)], kUParity[size_t(i)]));
    worst = std::fmax(worst, off_class_residual(r.f[size_t(i)], kVParity[size_t(i)]));
  }
  return std::fmax(worst, off_class_residual(r.h, Parity::EvenGeneral));
}

inline State<Interval> to_interval(const State<double>& x) {
  State<Interval> r;
  r.dom = x.dom;
  r.a = series::to_interval(x.a);
  r.beta = series::to_interval(x.beta);
  r.alpha = series::to_interval(x.alpha);
  for (int i = 0; i < 3; ++i) {
    r.u[size_t(i)] = series::to_interval(x.u[size_t(i)]);
    r.v[size_t(i)] = series::to_interval(x.v[size_t(i)]);
  }
  r.w = series::to_interval(x.w);
  return r;
}

inline ChebSeries<double> midpoint(const ChebSeries<Interval>& a) {
  ChebSeries<double> r(a.degree());
  for (size_t n = 0; n < a.c.size(); ++n) r.c[n] = series::midpoint(a.c[n]);
  return r;
}

inline State<double> midpoint(const State<Interval>& x) {
  State<double> r;
  r.dom = x.dom;
  r.a = midpoint(x.a);
  r.beta = midpoint(x.beta);
  r.alpha = midpoint(x.alpha);
  for (int i = 0; i < 3; ++i) {
    r.u[size_t(i)] = series::midpoint(x.u[size_t(i)]);
    r.v[size_t(i)] = series::midpoint(x.v[size_t(i)]);
  }
  r.w = series::midpoint(x.w);
  return r;
}

}  // namespace choreo::model
