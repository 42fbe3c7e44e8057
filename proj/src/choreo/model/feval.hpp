#pragma once

#include <array>

#include "choreo/model/state.hpp"

namespace choreo::model {

using series::real_from;

// The first-order system whose zeros are the reduced periodic orbits:
//   eta1 = u3(0,.) - 1
//   eta2 = mean_t u1
//   gamma = [w^2 <u - Su, L_a (u - Su)>](0,.) - 1
//   g = dv/dt + beta e1 - Om^2 Ibar u - 2 Om Jbar v + w^3 (u - Su) + (Rw^3)(u - S^2 u)
//   f = du/dt - v
//   h = dw/dt + alpha + w^3 <u - Su, L_a (v - Sv)>
// with S the 4*pi/3 time shift, R the time reflection, Ibar = diag(1,1,0),
// Jbar e1 = e2 (so (Jbar v)_1 = -v_2, (Jbar v)_2 = v_1), L_a = diag(1,1,a).
//
// Pack stores the products of a fixed state that the residual, the directional
// derivative and the derivative matrix entries all share.
template <class R>
struct Pack {
  ChebSeries<R> om, om2;  // Omega and Omega^2 on the frame

  std::array<FourierCheb<R>, 3> du1, du2, dv1;  // u - S u, u - S^2 u, v - S v
  FourierCheb<R> w2, w3, Rw3;
  std::array<FourierCheb<R>, 3> La_du1, La_dv1;  // L_a applied to du1, dv1
  FourierCheb<R> inner_uu;  // <u - Su, L_a (u - Su)>
  FourierCheb<R> inner_uv;  // <u - Su, L_a (v - Sv)>

  // h-row multipliers: dh/du_i = M_{m_h_u[i]} (I - S), dh/dv_i = M_{m_h_v[i]} (I - S),
  // dh/dw = d/dt + M_{m_h_w}, dh/da = M_{m_h_a}.
  std::array<FourierCheb<R>, 3> m_h_u;  // w^3 (L_a dv1)_i
  std::array<FourierCheb<R>, 3> m_h_v;  // w^3 (L_a du1)_i
  FourierCheb<R> m_h_w;                 // 3 w^2 <du1, L_a dv1>
  FourierCheb<R> m_h_a;                 // w^3 du1_3 dv1_3

  // g-row w-column: dg_j/dw = M_{m_g_w[j]} + M_{du2_j} R M_{3w^2}; the second
  // factor is the Hankel operator with symbol hg_w[j] = du2_j * R(3 w^2).
  // m_g_w2[j] = 3 w^2 du2_j is kept alongside for the tail bounds.
  std::array<FourierCheb<R>, 3> m_g_w;   // 3 w^2 du1_j
  std::array<FourierCheb<R>, 3> hg_w;    // du2_j * reflect(3 w^2)
  std::array<FourierCheb<R>, 3> m_g_w2;  // 3 w^2 du2_j

  // gamma-row multipliers, already evaluated at t = 0 (evaluation is an algebra
  // morphism, so the row factors through these Chebyshev series):
  // dgamma/du_i = eval_0 . M_{e_gam_u[i]} (I - S), dgamma/dw = eval_0 . M_{e_gam_w},
  // dgamma/da = e_gam_a.
  std::array<ChebSeries<R>, 3> e_gam_u;  // [2 w^2 (L_a du1)_i](0,.)
  ChebSeries<R> e_gam_w;                 // [2 w <du1, L_a du1>](0,.)
  ChebSeries<R> e_gam_a;                 // [w^2 du1_3^2](0,.)
};

template <class R>
Pack<R> make_pack(const State<R>& x) {
  Pack<R> p;
  p.om = omega_series<R>(x.dom);
  p.om2 = p.om * p.om;

  for (int i = 0; i < 3; ++i) {
    const size_t si(i);
    p.du1[si] = x.u[si] - shift_by(x.u[si], 1);
    p.du2[si] = x.u[si] - shift_by(x.u[si], 2);
    p.dv1[si] = x.v[si] - shift_by(x.v[si], 1);
  }
  p.w2 = x.w * x.w;
  p.w3 = p.w2 * x.w;
  p.Rw3 = reflect(p.w3);

  for (int i = 0; i < 3; ++i) {
    const size_t si(i);
    p.La_du1[si] = i < 2 ? p.du1[si] : x.a * p.du1[si];
    p.La_dv1[si] = i < 2 ? p.dv1[si] : x.a * p.dv1[si];
  }
  p.inner_uu = p.du1[0] * p.La_du1[0] + p.du1[1] * p.La_du1[1] + p.du1[2] * p.La_du1[2];
  p.inner_uv = p.du1[0] * p.La_dv1[0] + p.du1[1] * p.La_dv1[1] + p.du1[2] * p.La_dv1[2];

  for (int i = 0; i < 3; ++i) {
    const size_t si(i);
    p.m_h_u[si] = p.w3 * p.La_dv1[si];
    p.m_h_v[si] = p.w3 * p.La_du1[si];
  }
  p.m_h_w = scale_real(p.w2 * p.inner_uv, 3.0);
  p.m_h_a = p.w3 * (p.du1[2] * p.dv1[2]);

  const FourierCheb<R> Rw2_3 = scale_real(reflect(p.w2), 3.0);
  for (int j = 0; j < 3; ++j) {
    const size_t sj(j);
    p.m_g_w[sj] = scale_real(p.w2 * p.du1[sj], 3.0);
    p.hg_w[sj] = p.du2[sj] * Rw2_3;
    p.m_g_w2[sj] = scale_real(p.w2 * p.du2[sj], 3.0);
  }

  const ChebSeries<R> e_w = eval_time_zero(x.w);
  const ChebSeries<R> e_w2 = eval_time_zero(p.w2);
  const ChebSeries<R> e_uu = eval_time_zero(p.inner_uu);
  for (int i = 0; i < 3; ++i)
    p.e_gam_u[size_t(i)] =
        scale_real(e_w2 * eval_time_zero(p.La_du1[size_t(i)]), 2.0);
  p.e_gam_w = scale_real(e_w * e_uu, 2.0);
  const ChebSeries<R> e_du3 = eval_time_zero(p.du1[2]);
  p.e_gam_a = e_w2 * (e_du3 * e_du3);
  return p;
}

// Adds a Chebyshev scalar into one Fourier mode of a series.
template <class R>
void add_to_mode(FourierCheb<R>& a, int k, const ChebSeries<R>& s) {
  require_invariant(s.degree() <= a.N && std::abs(k) <= a.K,
                    "add_to_mode: target series too small");
  for (int n = 0; n <= s.degree(); ++n) a.at(k, n) += s.c[size_t(n)];
}

template <class R>
Residual<R> eval_F(const State<R>& x, const Pack<R>& p) {
  Residual<R> r;

  r.eta1 = eval_time_zero(x.u[2]);
  r.eta1.c[0].re = r.eta1.c[0].re - real_from<R>(1.0);
  r.eta2 = mean_in_time(x.u[0]);

  // gamma factors through t = 0 evaluation of each product.
  r.gamma = eval_time_zero(p.w2) * eval_time_zero(p.inner_uu);
  r.gamma.c[0].re = r.gamma.c[0].re - real_from<R>(1.0);

  for (int j = 0; j < 3; ++j) {
    const size_t sj(j);
    FourierCheb<R> gj = dt(x.v[sj]) + p.w3 * p.du1[sj] + p.Rw3 * p.du2[sj];
    if (j < 2) gj = gj - p.om2 * x.u[sj];
    r.g[sj] = gj;
  }
  r.g[0] = r.g[0] + scale_real(p.om * x.v[1], 2.0);
  r.g[1] = r.g[1] - scale_real(p.om * x.v[0], 2.0);
  add_to_mode(r.g[0], 0, x.beta);

  for (int j = 0; j < 3; ++j) r.f[size_t(j)] = dt(x.u[size_t(j)]) - x.v[size_t(j)];

  r.h = dt(x.w) + p.w3 * p.inner_uv;
  add_to_mode(r.h, 0, x.alpha);
  return r;
}

template <class R>
Residual<R> eval_F(const State<R>& x) {
  return eval_F(x, make_pack(x));
}

// Directional derivative DF(x)[d], with the multiplier pack of x.
template <class R>
Residual<R> apply_DF(const State<R>& x, const Pack<R>& p, const State<R>& d) {
  require_invariant(same_frame(x.dom, d.dom), "apply_DF: frame mismatch");
  std::array<FourierCheb<R>, 3> Ddu1, Ddu2, Ddv1;
  for (int i = 0; i < 3; ++i) {
    const size_t si(i);
    Ddu1[si] = d.u[si] - shift_by(d.u[si], 1);
    Ddu2[si] = d.u[si] - shift_by(d.u[si], 2);
    Ddv1[si] = d.v[si] - shift_by(d.v[si], 1);
  }

  Residual<R> r;
  r.eta1 = eval_time_zero(d.u[2]);
  r.eta2 = mean_in_time(d.u[0]);

  ChebSeries<R> gam = p.e_gam_a * d.a;
  for (int i = 0; i < 3; ++i)
    gam += p.e_gam_u[size_t(i)] * eval_time_zero(Ddu1[size_t(i)]);
  gam += p.e_gam_w * eval_time_zero(d.w);
  r.gamma = gam;

  for (int j = 0; j < 3; ++j) {
    const size_t sj(j);
    FourierCheb<R> gj = dt(d.v[sj]) + p.w3 * Ddu1[sj] + p.Rw3 * Ddu2[sj] +
                        p.m_g_w[sj] * d.w + p.hg_w[sj] * reflect(d.w);
    if (j < 2) gj = gj - p.om2 * d.u[sj];
    r.g[sj] = gj;
  }
  r.g[0] = r.g[0] + scale_real(p.om * d.v[1], 2.0);
  r.g[1] = r.g[1] - scale_real(p.om * d.v[0], 2.0);
  add_to_mode(r.g[0], 0, d.beta);

  for (int j = 0; j < 3; ++j) r.f[size_t(j)] = dt(d.u[size_t(j)]) - d.v[size_t(j)];

  FourierCheb<R> h = dt(d.w) + p.m_h_w * d.w + d.a * p.m_h_a;
  for (int i = 0; i < 3; ++i) {
    const size_t si(i);
    h = h + p.m_h_u[si] * Ddu1[si] + p.m_h_v[si] * Ddv1[si];
  }
  add_to_mode(h, 0, d.alpha);
  r.h = h;
  return r;
}

}  // namespace choreo::model
