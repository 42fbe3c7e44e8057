#pragma once

#include <vector>

#include "choreo/rigor/elementary.hpp"
#include "choreo/series/cheb.hpp"
#include "choreo/series/parity.hpp"

namespace choreo::series {

// Fourier-Chebyshev tensor series
//   phi(t, s) = sum_{|k| <= K} sum_{0 <= n <= N} c_{k,n} e^{i k t} T_n(s),
// stored two-sided and dense; entry (k, n) lives at index (k+K)*(N+1) + n.
// The weighted norm is  nu_norm(phi) = sum_k x_norm(phi_k) * nu^{|k|}.
template <class R>
struct FourierCheb {
  int K = 0;
  int N = 0;
  std::vector<Cplx<R>> c;

  FourierCheb() = default;
  FourierCheb(int k_range, int degree)
      : K(k_range), N(degree), c(size_t(2 * k_range + 1) * size_t(degree + 1)) {}

  size_t idx(int k, int n) const { return size_t(k + K) * size_t(N + 1) + size_t(n); }
  Cplx<R>& at(int k, int n) { return c[idx(k, n)]; }
  const Cplx<R>& at(int k, int n) const { return c[idx(k, n)]; }

  // Coefficient access that treats out-of-range indices as zero.
  Cplx<R> get(int k, int n) const {
    if (k < -K || k > K || n < 0 || n > N) return Cplx<R>{};
    return c[idx(k, n)];
  }

  // The k-th Fourier coefficient as a Chebyshev series.
  ChebSeries<R> coeff(int k) const {
    ChebSeries<R> s(N);
    for (int n = 0; n <= N; ++n) s.c[size_t(n)] = get(k, n);
    return s;
  }

  void set_coeff(int k, const ChebSeries<R>& s) {
    for (int n = 0; n <= N; ++n) at(k, n) = n <= s.degree() ? s.c[size_t(n)] : Cplx<R>{};
  }
};

template <class R>
FourierCheb<R> operator+(const FourierCheb<R>& a, const FourierCheb<R>& b) {
  FourierCheb<R> r(std::max(a.K, b.K), std::max(a.N, b.N));
  for (int k = -r.K; k <= r.K; ++k)
    for (int n = 0; n <= r.N; ++n) r.at(k, n) = a.get(k, n) + b.get(k, n);
  return r;
}

template <class R>
FourierCheb<R> operator-(const FourierCheb<R>& a, const FourierCheb<R>& b) {
  FourierCheb<R> r(std::max(a.K, b.K), std::max(a.N, b.N));
  for (int k = -r.K; k <= r.K; ++k)
    for (int n = 0; n <= r.N; ++n) r.at(k, n) = a.get(k, n) - b.get(k, n);
  return r;
}

template <class R>
FourierCheb<R> operator-(const FourierCheb<R>& a) {
  FourierCheb<R> r(a.K, a.N);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = -a.c[i];
  return r;
}

template <class R>
FourierCheb<R> operator*(const Cplx<R>& s, const FourierCheb<R>& a) {
  FourierCheb<R> r(a.K, a.N);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = s * a.c[i];
  return r;
}

template <class R>
FourierCheb<R> scale_real(const FourierCheb<R>& a, double s) {
  FourierCheb<R> r(a.K, a.N);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = scale(a.c[i], s);
  return r;
}

// Full product: Fourier convolution tensored with the Chebyshev product.  The
// output support is exact (K1+K2, N1+N2); accumulation order is canonical
// (ascending k then n of the first factor), independent of any threading.
template <class R>
FourierCheb<R> operator*(const FourierCheb<R>& a, const FourierCheb<R>& b) {
  FourierCheb<R> r(a.K + b.K, a.N + b.N);
  const int NB = b.N, KB = b.K;
  for (int ka = -a.K; ka <= a.K; ++ka) {
    for (int na = 0; na <= a.N; ++na) {
      const Cplx<R> va = a.at(ka, na);
      if (is_zero(va)) continue;
      for (int kb = -KB; kb <= KB; ++kb) {
        for (int nb = 0; nb <= NB; ++nb) {
          const Cplx<R> vb = b.at(kb, nb);
          if (is_zero(vb)) continue;
          const Cplx<R> half = scale(va * vb, 0.5);
          r.at(ka + kb, na + nb) += half;
          r.at(ka + kb, std::abs(na - nb)) += half;
        }
      }
    }
  }
  return r;
}

// Product with a pure Chebyshev series (Fourier-diagonal multiplier).
template <class R>
FourierCheb<R> operator*(const ChebSeries<R>& a, const FourierCheb<R>& b) {
  FourierCheb<R> r(b.K, b.N + a.degree());
  for (int k = -b.K; k <= b.K; ++k) r.set_coeff(k, a * b.coeff(k));
  return r;
}

// d/dt: coefficient k picks up the factor i*k.
template <class R>
FourierCheb<R> dt(const FourierCheb<R>& a) {
  FourierCheb<R> r(a.K, a.N);
  for (int k = -a.K; k <= a.K; ++k)
    for (int n = 0; n <= a.N; ++n) r.at(k, n) = mul_i_times(a.at(k, n), double(k));
  return r;
}

// Reflection (R phi)_k = phi_{-k}.
template <class R>
FourierCheb<R> reflect(const FourierCheb<R>& a) {
  FourierCheb<R> r(a.K, a.N);
  for (int k = -a.K; k <= a.K; ++k)
    for (int n = 0; n <= a.N; ++n) r.at(k, n) = a.at(-k, n);
  return r;
}

// Shift operator S^j: (S^j phi)(t) = phi(t + j * 4*pi/3), i.e. coefficient k is
// multiplied by the cube-root-of-unity phase exp(i 4*pi*k*j/3).  Exact when
// 3 | k*j; otherwise the phase is (-1/2, -+sqrt(3)/2).
template <class R>
FourierCheb<R> shift_by(const FourierCheb<R>& a, int j) {
  FourierCheb<R> r(a.K, a.N);
  for (int k = -a.K; k <= a.K; ++k) {
    Cplx<R> ph;
    if constexpr (std::is_same_v<R, Interval>) {
      const rigor::CInterval e = rigor::exp_phase(1LL * k * j);
      ph = Cplx<Interval>{e.re, e.im};
    } else {
      const long long m = ((1LL * k * j) % 3 + 3) % 3;
      if (m == 0) ph = Cplx<double>{1.0, 0.0};
      else if (m == 1) ph = Cplx<double>{-0.5, -0.5 * std::sqrt(3.0)};
      else ph = Cplx<double>{-0.5, 0.5 * std::sqrt(3.0)};
    }
    for (int n = 0; n <= a.N; ++n) r.at(k, n) = ph * a.at(k, n);
  }
  return r;
}

// Pointwise evaluation phi(t, s) for the double path (solver diagnostics,
// orbit sampling): Clenshaw in s, then a rotation-free Fourier sum in t.
inline Cplx<double> eval_point(const FourierCheb<double>& a, double t, double s) {
  Cplx<double> acc{};
  const Cplx<double> rot{std::cos(t), std::sin(t)};
  // e^{ikt} built by incremental rotation from k = -K.
  Cplx<double> ph{std::cos(-a.K * t), std::sin(-a.K * t)};
  for (int k = -a.K; k <= a.K; ++k) {
    acc += eval(a.coeff(k), s) * ph;
    ph = ph * rot;
  }
  return acc;
}

// Rigorous evaluation of a Fourier slice (N = 0) at an interval time.
inline Cplx<Interval> eval_slice_time(const FourierCheb<Interval>& a, const Interval& t) {
  Cplx<Interval> acc{};
  for (int k = -a.K; k <= a.K; ++k) {
    const Interval kt = Interval(double(k)) * t;
    const Cplx<Interval> ph{rigor::icos(kt), rigor::isin(kt)};
    acc += a.at(k, 0) * ph;
  }
  return acc;
}

// Truncation to |k| <= K' (and degree <= N'), and the complementary tail.
template <class R>
FourierCheb<R> proj_modes(const FourierCheb<R>& a, int Kmax) {
  FourierCheb<R> r(std::min(a.K, Kmax), a.N);
  for (int k = -r.K; k <= r.K; ++k)
    for (int n = 0; n <= r.N; ++n) r.at(k, n) = a.at(k, n);
  return r;
}

template <class R>
FourierCheb<R> proj_tail(const FourierCheb<R>& a, int Kmax) {
  FourierCheb<R> r(a.K, a.N);
  for (int k = -a.K; k <= a.K; ++k) {
    if (std::abs(k) <= Kmax) continue;
    for (int n = 0; n <= a.N; ++n) r.at(k, n) = a.at(k, n);
  }
  return r;
}

// phi(0, .) = sum_k phi_k as a Chebyshev series (the t = 0 evaluation used by
// the gamma and eta functionals).
template <class R>
ChebSeries<R> eval_time_zero(const FourierCheb<R>& a) {
  ChebSeries<R> s(a.N);
  for (int k = -a.K; k <= a.K; ++k) s += a.coeff(k);
  return s;
}

// Mean in t (the k = 0 coefficient).
template <class R>
ChebSeries<R> mean_in_time(const FourierCheb<R>& a) {
  return a.coeff(0);
}

// nu^{|k|} power table, built by repeated multiplication.
template <class R>
std::vector<R> nu_power_table(const R& nu, int kmax) {
  std::vector<R> p(size_t(kmax) + 1);
  p[0] = real_from<R>(1.0);
  for (int k = 1; k <= kmax; ++k) p[size_t(k)] = p[size_t(k - 1)] * nu;
  return p;
}

// nu_norm(phi) = sum_k x_norm(phi_k) nu^{|k|}.
template <class R>
R nu_norm(const FourierCheb<R>& a, const std::vector<R>& nu_pow) {
  R s = real_from<R>(0.0);
  for (int k = -a.K; k <= a.K; ++k) {
    const R xk = x_norm(a.coeff(k));
    s = s + xk * nu_pow[size_t(std::abs(k))];
  }
  return s;
}

template <class R>
R nu_norm_tail(const FourierCheb<R>& a, int Kmax, const std::vector<R>& nu_pow) {
  R s = real_from<R>(0.0);
  for (int k = -a.K; k <= a.K; ++k) {
    if (std::abs(k) <= Kmax) continue;
    s = s + x_norm(a.coeff(k)) * nu_pow[size_t(std::abs(k))];
  }
  return s;
}

// Slice at a parameter value: phi(., s0) as Fourier coefficients (N = 0).
template <class R>
FourierCheb<R> slice_at(const FourierCheb<R>& a, const R& s0) {
  FourierCheb<R> r(a.K, 0);
  for (int k = -a.K; k <= a.K; ++k) r.at(k, 0) = eval(a.coeff(k), s0);
  return r;
}

inline FourierCheb<Interval> to_interval(const FourierCheb<double>& a) {
  FourierCheb<Interval> r(a.K, a.N);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = to_interval(a.c[i]);
  return r;
}

inline FourierCheb<double> midpoint(const FourierCheb<Interval>& a) {
  FourierCheb<double> r(a.K, a.N);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = midpoint(a.c[i]);
  return r;
}

// Largest modulus of any coefficient violating the symmetry class: modes
// outside the class, the reflection relation c_{-k} = sigma c_k, and (for real
// data) the reality relation on EvenGeneral.  For rigorous data this must
// contain zero; the returned upper bound is asserted small by callers.
template <class R>
double off_class_residual(const FourierCheb<R>& a, Parity p) {
  double worst = 0.0;
  for (int k = -a.K; k <= a.K; ++k) {
    for (int n = 0; n <= a.N; ++n) {
      const Cplx<R> v = a.at(k, n);
      if (!mode_allowed(p, k)) {
        worst = std::fmax(worst, upper(nrm_abs(v)));
        continue;
      }
      if (has_reflection(p) && k >= 0) {
        const Cplx<R> m = a.at(-k, n);
        const Cplx<R> d =
            reflection_sign(p) > 0 ? Cplx<R>{m.re - v.re, m.im - v.im}
                                   : Cplx<R>{m.re + v.re, m.im + v.im};
        worst = std::fmax(worst, upper(nrm_abs(d)));
        // cos-type coefficients are real, sin-type purely imaginary.
        if (reflection_sign(p) > 0) worst = std::fmax(worst, upper(nrm_abs(Cplx<R>{real_from<R>(0.0), v.im})));
        else worst = std::fmax(worst, upper(nrm_abs(Cplx<R>{v.re, real_from<R>(0.0)})));
      }
      if (p == Parity::EvenGeneral && k >= 0) {
        const Cplx<R> m = conj(a.at(-k, n));
        worst = std::fmax(worst, upper(nrm_abs(Cplx<R>{m.re - v.re, m.im - v.im})));
      }
    }
  }
  return worst;
}

}  // namespace choreo::series
