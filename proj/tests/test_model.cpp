#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "choreo/model/dfassemble.hpp"
#include "choreo/model/feval.hpp"
#include "choreo/model/state.hpp"
#include "choreo/model/triangle.hpp"
#include "choreo/rigor/rounding.hpp"
#include "test_support.hpp"

using namespace choreo;
using model::Domain;
using model::Pack;
using model::Rational;
using model::Residual;
using model::State;
using rigor::Interval;
using rigor::RoundUpScope;
using series::ChebSeries;
using series::Cplx;
using series::FourierCheb;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Slice state (single frequency) with prescribed low-order data, used by the
// normalization-functional oracles.
State<double> toy_state(int K) {
  return State<double>::zeros(Domain{K, 0, 1.0, 1.0, Rational{}});
}

}  // namespace

// Oracle: for a slice with w = 1, a scalar, and u a trigonometric polynomial,
//   gamma = sum_i (L_a)_ii (u_i(0) - u_i(4 pi/3))^2 - 1
// by direct evaluation of the inner product at t = 0.  Hand values (checked
// against a 40-digit numeric evaluation):
//   u = (cos 2t, 0, 0),       a = 1:    (1 - cos(8 pi/3))^2 - 1           = 1.25
//   u = (cos 2t, sin 2t, 0),  a = 1:    add (0 - sin(8 pi/3))^2           = 2.0
//   u = (cos 2t, 0, cos t),   a = 1/4:  add (1/4)(1 - cos(4 pi/3))^2      = 1.8125
TEST_CASE("gamma normalization functional on closed-form slices") {
  auto set_cos = [](FourierCheb<double>& phi, int k, double amp) {
    phi.at(k, 0).re = 0.5 * amp;
    phi.at(-k, 0).re = 0.5 * amp;
  };
  auto set_sin = [](FourierCheb<double>& phi, int k, double amp) {
    phi.at(k, 0).im = -0.5 * amp;
    phi.at(-k, 0).im = 0.5 * amp;
  };

  State<double> x1 = toy_state(4);
  x1.a.c[0].re = 1.0;
  x1.w.at(0, 0).re = 1.0;
  set_cos(x1.u[0], 2, 1.0);

  State<double> x2 = x1;
  set_sin(x2.u[1], 2, 1.0);

  State<double> x3 = x1;
  x3.a.c[0].re = 0.25;
  set_cos(x3.u[2], 1, 1.0);

  CHECK(model::eval_F(x1).gamma.c[0].re == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(model::eval_F(x2).gamma.c[0].re == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(model::eval_F(x3).gamma.c[0].re == doctest::Approx(1.8125).epsilon(1e-13));

  RoundUpScope up;
  const auto g1 = model::eval_F(model::to_interval(x1)).gamma.c[0];
  const auto g2 = model::eval_F(model::to_interval(x2)).gamma.c[0];
  const auto g3 = model::eval_F(model::to_interval(x3)).gamma.c[0];
  CHECK(g1.re.contains(1.25));
  CHECK(g2.re.contains(2.0));
  CHECK(g3.re.contains(1.8125));
  CHECK(g1.im.contains(0.0));
  CHECK(rigor::width(g1.re) < 1e-13);
}

TEST_CASE("frequency series on a sub-interval and its square") {
  const Domain d{4, 2, 0.7, 1.0, Rational{}};
  const auto om = model::omega_series<double>(d);
  CHECK(om.c[0].re == 0.85);
  CHECK(om.c[1].re == doctest::Approx(0.15).epsilon(1e-16));
  CHECK(series::eval(om, 1.0).re == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(series::eval(om, -1.0).re == doctest::Approx(0.7).epsilon(1e-15));

  // On [0, 1]: Omega = 1/2 + T_1/2, so Omega^2 = 3/8 + T_1/2 + T_2/8 exactly,
  // with coefficient-sum norm 3/8 + 2(1/2 + 1/8) = 13/8.
  const Domain full{4, 2, 0.0, 1.0, Rational{}};
  const auto om_full = model::omega_series<double>(full);
  const auto om2 = om_full * om_full;
  CHECK(om2.c[0].re == 0.375);
  CHECK(om2.c[1].re == 0.5);
  CHECK(om2.c[2].re == 0.125);
  CHECK(series::x_norm(om2) == 1.625);

  CHECK(model::s_of_omega(d, 1.0) == doctest::Approx(1.0));
  CHECK(model::omega_of_s(d, -1.0) == doctest::Approx(0.7));
}

// Oracle: the equilateral relative equilibrium solves the system exactly at
// frequency 1; its amplitudes are 3^{-1/6} (in-plane), 1 (vertical), 3^{-1/3}
// (inverse side length).  Reference digits from a 40-digit evaluation:
//   3^{-1/6}/2 = 0.41634158882780216, 3^{-1/6} = 0.83268317765560432,
//   3^{-1/3}   = 0.69336127435063470.
TEST_CASE("triangle slice: frozen data and exact residual") {
  RoundUpScope up;
  const int K = 16;
  const State<double> tri = model::triangle_slice(K);

  CHECK(tri.u[0].at(2, 0).re == doctest::Approx(0.41634158882780216).epsilon(1e-15));
  CHECK(tri.u[1].at(2, 0).im == doctest::Approx(-0.41634158882780216).epsilon(1e-15));
  CHECK(tri.u[2].at(1, 0).re == 0.5);
  CHECK(tri.v[0].at(2, 0).im == doctest::Approx(0.83268317765560432).epsilon(1e-15));
  CHECK(tri.v[1].at(2, 0).re == doctest::Approx(0.83268317765560432).epsilon(1e-15));
  CHECK(tri.v[2].at(1, 0).im == 0.5);
  CHECK(tri.w.at(0, 0).re == doctest::Approx(0.69336127435063470).epsilon(1e-15));
  CHECK(model::off_class_residual(tri) == 0.0);

  // Double path: the residual vanishes to rounding dust.
  const Residual<double> r = model::eval_F(tri);
  CHECK(testing::residual_max_abs(r) < 1e-15);

  // Rigorous path: every residual coefficient encloses zero, certifying that
  // the stored slice is (an enclosure of) an exact solution.
  const Residual<Interval> ri = model::eval_F(model::triangle_slice_interval(K));
  CHECK(testing::residual_encloses_zero(ri));
}

TEST_CASE("residual and derivative stay in the symmetry classes") {
  const Domain dom{6, 3, 0.7, 1.0, Rational{}};
  const State<double> x = testing::random_state(dom, 11, 0.4);
  CHECK(model::off_class_residual(x) == 0.0);

  const Pack<double> p = model::make_pack(x);
  const Residual<double> r = model::eval_F(x, p);
  CHECK(model::off_class_residual(r) < 1e-12);

  const State<double> d = testing::random_state(dom, 23, 1.0);
  const Residual<double> dr = model::apply_DF(x, p, d);
  CHECK(model::off_class_residual(dr) < 1e-12);

  // Point frame as used by the per-node solves.
  const Domain pt{6, 0, 0.85, 0.85, Rational{}};
  const State<double> xs = testing::random_state(pt, 31, 0.4);
  CHECK(model::off_class_residual(model::eval_F(xs)) < 1e-12);
}

// The Hankel symbol du2_j * R(3 w^2) is the reflection of +-(3 w^2 du1_j), so
// the two weighted norms agree; this ties together shift, reflection, and the
// class structure.
TEST_CASE("reflection identity between the two gravity multipliers") {
  const Domain dom{6, 2, 0.7, 1.0, Rational{}};
  const State<double> x = testing::random_state(dom, 5, 0.5);
  const Pack<double> p = model::make_pack(x);
  const auto pow = series::nu_power_table(1.1, 5 * dom.K + 1);
  for (int j = 0; j < 3; ++j) {
    const double nh = series::nu_norm(p.hg_w[size_t(j)], pow);
    const double nm = series::nu_norm(p.m_g_w[size_t(j)], pow);
    CHECK(nh == doctest::Approx(nm).epsilon(1e-12));
  }
}

TEST_CASE("pointwise trigonometric evaluation matches the series residual") {
  const Domain dom{6, 3, 0.7, 1.0, Rational{}};
  const State<double> x = testing::random_state(dom, 17, 0.4);
  const Residual<double> r = model::eval_F(x);

  const double tau = 4.0 * kPi / 3.0;
  std::array<FourierCheb<double>, 3> dtv, dtu;
  for (int i = 0; i < 3; ++i) {
    dtv[size_t(i)] = series::dt(x.v[size_t(i)]);
    dtu[size_t(i)] = series::dt(x.u[size_t(i)]);
  }
  const FourierCheb<double> dtw = series::dt(x.w);

  const double ts[] = {0.0, 0.37, 1.234, 2.8, 4.4, 5.77};
  const double ss[] = {-1.0, -0.45, 0.2, 0.83, 1.0};
  double worst = 0.0;
  auto track = [&worst](const Cplx<double>& a, const Cplx<double>& b) {
    worst = std::fmax(worst, series::nrm_abs(a - b));
  };

  for (double s : ss) {
    const double om = model::omega_of_s(dom, s);
    const double a_s = series::eval(x.a, s).re;
    const double beta_s = series::eval(x.beta, s).re;
    const double alpha_s = series::eval(x.alpha, s).re;

    for (double t : ts) {
      Cplx<double> u[3], uS[3], uS2[3], v[3], vS[3];
      for (int i = 0; i < 3; ++i) {
        u[i] = series::eval_point(x.u[size_t(i)], t, s);
        uS[i] = series::eval_point(x.u[size_t(i)], t + tau, s);
        uS2[i] = series::eval_point(x.u[size_t(i)], t + 2 * tau, s);
        v[i] = series::eval_point(x.v[size_t(i)], t, s);
        vS[i] = series::eval_point(x.v[size_t(i)], t + tau, s);
      }
      const Cplx<double> wv = series::eval_point(x.w, t, s);
      const Cplx<double> wr = series::eval_point(x.w, -t, s);
      const Cplx<double> w3 = wv * wv * wv;
      const Cplx<double> rw3 = wr * wr * wr;

      // g_j = dv_j/dt + beta delta_{j1} - Om^2 Ibar u - 2 Om (Jbar v)_j
      //       + w^3 (u - Su)_j + (Rw)^3 (u - S^2 u)_j
      const Cplx<double> jbar[3] = {Cplx<double>{-v[1].re, -v[1].im}, v[0], {}};
      for (int j = 0; j < 3; ++j) {
        Cplx<double> gd = series::eval_point(dtv[size_t(j)], t, s);
        if (j == 0) gd.re += beta_s;
        if (j < 2) gd -= series::scale(u[j], om * om);
        gd -= series::scale(jbar[j], 2.0 * om);
        gd += w3 * (u[j] - uS[j]) + rw3 * (u[j] - uS2[j]);
        track(gd, series::eval_point(r.g[size_t(j)], t, s));
      }

      // f_j = du_j/dt - v_j
      for (int j = 0; j < 3; ++j)
        track(series::eval_point(dtu[size_t(j)], t, s) - v[j],
              series::eval_point(r.f[size_t(j)], t, s));

      // h = dw/dt + alpha + w^3 <u - Su, L_a (v - Sv)>
      Cplx<double> inner{};
      for (int i = 0; i < 3; ++i) {
        Cplx<double> term = (u[i] - uS[i]) * (v[i] - vS[i]);
        if (i == 2) term = series::scale(term, a_s);
        inner += term;
      }
      Cplx<double> hd = series::eval_point(dtw, t, s) + w3 * inner;
      hd.re += alpha_s;
      track(hd, series::eval_point(r.h, t, s));
    }

    // eta1 = u3(0,.) - 1 and gamma at t = 0.
    Cplx<double> u0[3], u0S[3];
    for (int i = 0; i < 3; ++i) {
      u0[i] = series::eval_point(x.u[size_t(i)], 0.0, s);
      u0S[i] = series::eval_point(x.u[size_t(i)], tau, s);
    }
    const Cplx<double> w0 = series::eval_point(x.w, 0.0, s);
    Cplx<double> quad{};
    for (int i = 0; i < 3; ++i) {
      Cplx<double> term = (u0[i] - u0S[i]) * (u0[i] - u0S[i]);
      if (i == 2) term = series::scale(term, a_s);
      quad += term;
    }
    Cplx<double> gam = w0 * w0 * quad;
    gam.re -= 1.0;
    track(gam, series::eval(r.gamma, s));

    Cplx<double> eta1 = u0[2];
    eta1.re -= 1.0;
    track(eta1, series::eval(r.eta1, s));

    // eta2 = mean of u1: a 32-point trapezoid rule is exact for K = 6.
    Cplx<double> mean{};
    for (int i = 0; i < 32; ++i)
      mean += series::eval_point(x.u[0], 2.0 * kPi * i / 32.0, s);
    track(series::scale(mean, 1.0 / 32.0), series::eval(r.eta2, s));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("directional derivative matches central differences") {
  const Domain dom{5, 2, 0.7, 1.0, Rational{}};
  const State<double> x = testing::random_state(dom, 7, 0.4);
  const State<double> d = testing::random_state(dom, 99, 1.0);
  const Pack<double> p = model::make_pack(x);
  const Residual<double> dr = model::apply_DF(x, p, d);

  const auto pow = series::nu_power_table(1.1, 5 * dom.K + 1);
  const double ref = 1.0 + model::residual_norm(dr, pow);

  auto fd_err = [&](double eps) {
    const Residual<double> hi = model::eval_F(x + model::scale(d, eps));
    const Residual<double> lo = model::eval_F(x - model::scale(d, eps));
    const Residual<double> fd = model::scale(hi - lo, 0.5 / eps);
    return model::residual_norm(fd - dr, pow);
  };

  CHECK(fd_err(1e-6) / ref < 1e-5);
  const double e3 = fd_err(1e-3), e4 = fd_err(1e-4);
  CHECK(e4 / ref < 1e-6);
  CHECK(e3 / e4 > 30.0);  // second-order convergence of the central quotient
}

TEST_CASE("derivative matrix entries reproduce the directional derivative") {
  const Domain dom{5, 2, 0.7, 1.0, Rational{}};
  const State<double> x = testing::random_state(dom, 3, 0.4);
  const Pack<double> p = model::make_pack(x);
  const series::Layout L = series::make_layout(dom.K);

  const auto M = model::assemble_dense(p, L, L);

  const State<double> d = testing::random_state(dom, 41, 1.0);
  const auto xd = model::repr_coords<double>(d, L);
  const auto y = model::apply_dense(M, L, L, xd);
  const auto z = model::repr_coords<double>(model::apply_DF(x, p, d), L);

  double worst = 0.0;
  for (int e = 0; e < L.size(); ++e) {
    const double diff = series::x_norm(y[size_t(e)] - z[size_t(e)]);
    const double scale_ref = 1.0 + series::x_norm(z[size_t(e)]);
    worst = std::fmax(worst, diff / scale_ref);
  }
  CHECK(worst < 2e-12);

  // The interval assembly encloses the double assembly to rounding accuracy.
  RoundUpScope up;
  const Pack<Interval> pi = model::make_pack(model::to_interval(x));
  int checked = 0;
  for (int re = 0; re < L.size(); ++re) {
    for (int ce = 0; ce < L.size(); ++ce) {
      const auto ent_d = model::df_entry(p, L, L, re, ce);
      const auto ent_i = model::df_entry(pi, L, L, re, ce);
      REQUIRE(ent_d.degree() == ent_i.degree());
      for (int n = 0; n <= ent_d.degree(); ++n) {
        REQUIRE(testing::pad_contains(ent_i.c[size_t(n)], ent_d.c[size_t(n)], 1e-12));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("rigorous residual encloses the floating-point residual") {
  RoundUpScope up;
  const Domain dom{5, 2, 0.7, 1.0, Rational{}};
  const State<double> x = testing::random_state(dom, 13, 0.4);
  const Residual<double> rd = model::eval_F(x);
  const Residual<Interval> ri = model::eval_F(model::to_interval(x));

  auto check_cheb = [](const ChebSeries<Interval>& a, const ChebSeries<double>& b) {
    REQUIRE(a.degree() == b.degree());
    for (int n = 0; n <= a.degree(); ++n)
      REQUIRE(testing::pad_contains(a.c[size_t(n)], b.c[size_t(n)], 1e-10));
  };
  auto check_four = [](const FourierCheb<Interval>& a, const FourierCheb<double>& b) {
    REQUIRE(a.K == b.K);
    REQUIRE(a.N == b.N);
    for (size_t i = 0; i < a.c.size(); ++i)
      REQUIRE(testing::pad_contains(a.c[i], b.c[i], 1e-10));
  };
  check_cheb(ri.eta1, rd.eta1);
  check_cheb(ri.eta2, rd.eta2);
  check_cheb(ri.gamma, rd.gamma);
  for (int i = 0; i < 3; ++i) {
    check_four(ri.g[size_t(i)], rd.g[size_t(i)]);
    check_four(ri.f[size_t(i)], rd.f[size_t(i)]);
  }
  check_four(ri.h, rd.h);
}
