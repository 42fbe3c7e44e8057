// Tests of the rigorous bound machinery: directed dense-product enclosures,
// weighted operator norms, the Y / Z1 / Z2 estimates, and end-to-end
// certification on small frames.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cfenv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "choreo/model/dfassemble.hpp"
#include "choreo/model/triangle.hpp"
#include "choreo/prover/bounds.hpp"
#include "choreo/prover/matrixops.hpp"
#include "choreo/rigor/rounding.hpp"
#include "choreo/solver/continuation.hpp"

using namespace choreo;
using rigor::Interval;
using Cld = std::complex<long double>;

namespace {

// Double powers of nu for the non-rigorous norm evaluations in the oracles.
std::vector<double> dpow(double nu, int n) {
  std::vector<double> p(size_t(n) + 1, 1.0);
  for (int j = 1; j <= n; ++j) p[size_t(j)] = p[size_t(j) - 1] * nu;
  return p;
}

}  // namespace

// Oracle: a product of complex matrices accumulated through the directed
// kernels must enclose the product of any point matrices drawn from the input
// disks.  The reference is evaluated in long double (under to-nearest
// rounding), whose error is ~2^-64 per operation -- far below the enclosure
// slack whenever any double rounding occurred, and exactly representable
// otherwise.
TEST_CASE("directed dense product enclosures contain sampled exact products") {
  const rigor::RoundUpScope up;
  std::mt19937_64 rng(0x5eed0001ULL);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_real_distribution<double> U01(0.0, 1.0);

  const long rows = 6, inner = 7, cols = 5;
  const int orders = 5;
  int checked = 0;
  bool saw_width = false;

  for (int rep = 0; rep < 30; ++rep) {
    // Two exact left factors.
    std::vector<Eigen::MatrixXcd> Apt(2, Eigen::MatrixXcd::Zero(rows, inner));
    for (auto& M : Apt)
      for (long i = 0; i < rows; ++i)
        for (long j = 0; j < inner; ++j) M(i, j) = {U(rng), U(rng)};
    std::vector<prover::ExactCMat> As;
    for (const auto& M : Apt) As.push_back(prover::split_exact(M));

    // Three disk right factors plus a point matrix sampled from each disk.
    std::vector<prover::OrderMat> Bs(3);
    std::vector<Eigen::MatrixXcd> Bpt(3, Eigen::MatrixXcd::Zero(inner, cols));
    for (size_t b = 0; b < 3; ++b) {
      Bs[b].init(inner, cols);
      for (long i = 0; i < inner; ++i)
        for (long j = 0; j < cols; ++j) {
          const double cr = U(rng), ci = U(rng);
          const double rad = (rep % 2 == 0 && U01(rng) < 0.5) ? 1e-3 * U01(rng) : 0.0;
          Bs[b].re(i, j) = cr;
          Bs[b].im(i, j) = ci;
          Bs[b].rad(i, j) = rad;
          Bs[b].zero = false;
          const double th = 6.28318530717958647692 * U01(rng);
          const double rho = rad * U01(rng);
          Bpt[b](i, j) = std::complex<double>(cr + rho * std::cos(th),
                                              ci + rho * std::sin(th));
        }
    }

    // Random accumulation schedule, with the two Chebyshev targets per call.
    prover::RangeAccum acc;
    acc.init(orders, rows, cols);
    std::vector<std::array<int, 4>> sched;
    for (int call = 0; call < 6; ++call) {
      const int ai = int(rng() % 2), bi = int(rng() % 3);
      const int t1 = int(rng() % orders), t2 = int(rng() % orders);
      sched.push_back({ai, bi, t1, t2});
      acc.add_product_cheb(t1, t2, As[size_t(ai)], Bs[size_t(bi)]);
    }
    acc.subtract_one(1, 2);

    // Snapshot the upper modulus bounds while FE_UPWARD is installed.
    std::vector<double> mod_up(size_t(orders) * size_t(rows) * size_t(cols));
    for (int t = 0; t < orders; ++t)
      for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
          mod_up[size_t((t * rows + i) * cols + j)] = acc.abs_up(t, i, j);

    // Long double reference under to-nearest rounding.
    std::fesetround(FE_TONEAREST);
    std::vector<Cld> ref(size_t(orders) * size_t(rows) * size_t(cols));
    for (const auto& s : sched)
      for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
          Cld dot = 0.0L;
          for (long k = 0; k < inner; ++k) {
            const auto a = Apt[size_t(s[0])](i, k);
            const auto b = Bpt[size_t(s[1])](k, j);
            dot += Cld(a.real(), a.imag()) * Cld(b.real(), b.imag());
          }
          ref[size_t((s[2] * rows + i) * cols + j)] += 0.5L * dot;
          ref[size_t((s[3] * rows + i) * cols + j)] += 0.5L * dot;
        }
    ref[size_t((0 * rows + 1) * cols + 2)] -= 1.0L;

    for (int t = 0; t < orders; ++t)
      for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
          const Cld z = ref[size_t((t * rows + i) * cols + j)];
          const long double x = z.real(), y = z.imag();
          const long double dre = std::max(
              {0.0L, (long double)acc.re_lo[size_t(t)](i, j) - x,
               x - (long double)acc.re_hi[size_t(t)](i, j)});
          const long double dim = std::max(
              {0.0L, (long double)acc.im_lo[size_t(t)](i, j) - y,
               y - (long double)acc.im_hi[size_t(t)](i, j)});
          CHECK(std::hypot(dre, dim) <= (long double)acc.rad[size_t(t)](i, j));
          CHECK((long double)mod_up[size_t((t * rows + i) * cols + j)] >=
                std::abs(z));
          CHECK(acc.re_hi[size_t(t)](i, j) >= acc.re_lo[size_t(t)](i, j));
          if (acc.re_hi[size_t(t)](i, j) > acc.re_lo[size_t(t)](i, j))
            saw_width = true;
          ++checked;
        }
    std::fesetround(FE_UPWARD);
  }
  CHECK(saw_width);  // the up and down passes must genuinely differ
  CHECK(checked > 2000);
}

// Oracle: the weighted operator norm is max over column groups of the
// weighted modulus column sum over the group weight.  Reflection-folded and
// scalar columns stand alone with weight multiplicity * nu^k; the two-sided
// even-general columns pair {m, -m}, whose unit elements carry both conjugate
// coefficients, so the pair contributes the average of its two column sums
// over nu^|m|.  The identity has norm 1, and a single entry z at (r, c) with
// Chebyshev orders z0, z2 has norm weight(r) (|z0| + 2 |z2|) / pairweight(c).
TEST_CASE("weighted operator norm of the finite block: identity and crafted entries") {
  const rigor::RoundUpScope up;  // split_exact leaves FE_UPWARD to the caller's scope
  const model::Domain dom{6, 3, 0.7, 1.0};
  const double nu = 1.1;
  const prover::Ctx ctx = prover::make_ctx(dom, nu);
  const long n = ctx.LK.size();
  const auto pw = dpow(nu, 2 * dom.K + 1);
  const auto weight = [&](long e) {
    return ctx.LK.multiplicity(int(e)) * pw[size_t(ctx.LK.nu_exponent(int(e)))];
  };
  const auto is_paired = [&](long e) {
    const auto& ent = ctx.LK.entries[size_t(e)];
    return ent.comp == series::CompW && ent.k != 0;
  };
  // Worst column norm of per-column sums S under the pairing rule.
  const auto paired_max = [&](const std::vector<double>& S) {
    double worst = 0.0;
    for (long c = 0; c < n; ++c) {
      const auto& ent = ctx.LK.entries[size_t(c)];
      if (is_paired(c)) {
        if (ent.k < 0) continue;
        const long c2 = ctx.LK.index_of(ent.comp, -ent.k);
        worst = std::fmax(worst, 0.5 * (S[size_t(c)] + S[size_t(c2)]) / weight(c));
      } else {
        worst = std::fmax(worst, S[size_t(c)] / weight(c));
      }
    }
    return worst;
  };

  std::vector<prover::ExactCMat> ident;
  ident.push_back(prover::split_exact(Eigen::MatrixXcd::Identity(n, n)));
  const double one = prover::op_norm_finite(ctx, ident);
  CHECK(one >= 1.0);
  CHECK(one <= 1.0 + 1e-12);

  std::mt19937_64 rng(0x5eed0002ULL);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int rep = 0; rep < 40; ++rep) {
    const long r = long(rng() % uint64_t(n)), c = long(rng() % uint64_t(n));
    const std::complex<double> z0{U(rng), U(rng)}, z2{U(rng), U(rng)};
    Eigen::MatrixXcd M0 = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd M1 = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd M2 = Eigen::MatrixXcd::Zero(n, n);
    M0(r, c) = z0;
    M2(r, c) = z2;
    std::vector<prover::ExactCMat> A;
    for (const auto& M : {M0, M1, M2}) A.push_back(prover::split_exact(M));
    const double xn = std::abs(z0) + 2.0 * std::abs(z2);
    const double denom = is_paired(c) ? 2.0 * weight(c) : weight(c);
    const double expect = weight(r) * xn / denom;
    CHECK(prover::op_norm_finite(ctx, A) ==
          doctest::Approx(expect).epsilon(1e-12));
  }

  // Dense random single-order matrix against the direct column formula.
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M(i, j) = {U(rng), U(rng)};
  std::vector<prover::ExactCMat> A{prover::split_exact(M)};
  std::vector<double> S(size_t(n), 0.0);
  for (long c = 0; c < n; ++c)
    for (long r = 0; r < n; ++r) S[size_t(c)] += weight(r) * std::abs(M(r, c));
  CHECK(prover::op_norm_finite(ctx, A) ==
        doctest::Approx(paired_max(S)).epsilon(1e-12));
}

// Oracle: the shift by 4 pi / 3 scales Fourier mode k by e^{i 4 pi k / 3}, so
// the deficit operator I - S^j scales it by 1 - e^{i 4 pi j k / 3}, of modulus
// sqrt(3) when jk is not a multiple of 3 (the two unit phases differ by
// +-2 pi/3 and |1 - e^{+-2 pi i/3}| = sqrt(3)) and 0 otherwise.  Reflection
// permutes coefficients and preserves the norm exactly.
TEST_CASE("shift deficit and reflection attain the expected operator norms") {
  const int K = 12;
  const double nu = 1.1;
  const auto pw = dpow(nu, K + 1);
  const double s3 = std::sqrt(3.0);
  const auto rl = series::make_real_layout(K);
  std::mt19937_64 rng(0x5eed0003ULL);
  std::uniform_real_distribution<double> U(-1.0, 1.0);

  const int comps[] = {series::CompU1, series::CompU2, series::CompU3,
                       series::CompV1, series::CompV2, series::CompV3,
                       series::CompW};
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<double> amp(size_t(rl.size()));
    for (auto& a : amp) a = U(rng);
    for (const int comp : comps) {
      const auto phi = series::component_from_amplitudes(rl, comp, amp, K);
      const double base = series::nu_norm(phi, pw);
      if (base == 0.0) continue;
      for (int j = 1; j <= 2; ++j) {
        const double dev = series::nu_norm(phi - series::shift_by(phi, j), pw);
        CHECK(dev <= s3 * base * (1.0 + 1e-12));
        ++checked;
      }
      CHECK(series::nu_norm(series::reflect(phi), pw) ==
            doctest::Approx(base).epsilon(1e-14));
      ++checked;
    }
  }
  CHECK(checked >= 500);

  // Witness modes: k = 1 and k = 2 attain sqrt(3) exactly, k = 3 gives zero.
  const auto witness = [&](int comp, int k, bool is_sin) {
    std::vector<double> amp(size_t(rl.size()), 0.0);
    for (int e = 0; e < rl.size(); ++e) {
      const auto& ent = rl.entries[size_t(e)];
      if (ent.comp == comp && ent.k == k && ent.is_sin == is_sin)
        amp[size_t(e)] = 1.0;
    }
    return series::component_from_amplitudes(rl, comp, amp, K);
  };
  const auto ratio = [&](const series::FourierCheb<double>& phi, int j) {
    return series::nu_norm(phi - series::shift_by(phi, j), pw) /
           series::nu_norm(phi, pw);
  };
  const auto w1 = witness(series::CompU3, 1, false);  // odd-cos mode 1
  const auto w2 = witness(series::CompU2, 2, true);   // even-sin mode 2
  const auto w3 = witness(series::CompU3, 3, false);  // odd-cos mode 3
  CHECK(ratio(w1, 1) == doctest::Approx(s3).epsilon(1e-12));
  CHECK(ratio(w1, 2) == doctest::Approx(s3).epsilon(1e-12));
  CHECK(ratio(w2, 1) == doctest::Approx(s3).epsilon(1e-12));
  CHECK(ratio(w3, 1) == doctest::Approx(0.0).epsilon(1e-14));
}

// Oracle: with the identity as finite inverse, the finite part of Y is the
// weighted norm of the mode-K truncation, and the tail part weighs mode k by
// nu^|k| / |k| (the exact diagonal tail inverse).  A residual with a single
// two-sided pair at modes +-(K+2) of value z has tail 2 |z| nu^{K+2} / (K+2).
TEST_CASE("Y bound: finite matvec and sharp tail weights for a crafted residual") {
  const rigor::RoundUpScope up;  // split_exact leaves FE_UPWARD to the caller's scope
  const model::Domain dom{8, 0, 1.0, 1.0};
  const double nu = 1.1;
  const prover::Ctx ctx = prover::make_ctx(dom, nu);
  const long n = ctx.LK.size();
  std::vector<prover::ExactCMat> ident;
  ident.push_back(prover::split_exact(Eigen::MatrixXcd::Identity(n, n)));

  model::Residual<Interval> res;
  res.eta1 = series::ChebSeries<Interval>(0);
  res.eta2 = series::ChebSeries<Interval>(0);
  res.gamma = series::ChebSeries<Interval>(0);
  for (int j = 0; j < 3; ++j) {
    res.g[size_t(j)] = series::FourierCheb<Interval>(4 * dom.K, 0);
    res.f[size_t(j)] = series::FourierCheb<Interval>(dom.K, 0);
  }
  res.h = series::FourierCheb<Interval>(5 * dom.K, 0);

  const series::Cplx<Interval> z{Interval(3e-4), Interval(2e-4)};
  res.g[0].set_coeff(dom.K + 2, series::ChebSeries<Interval>::constant(z));
  res.g[0].set_coeff(-(dom.K + 2), series::ChebSeries<Interval>::constant(conj(z)));

  const auto y_tail_only = prover::bound_Y(ctx, res, ident);
  const double mz = std::hypot(3e-4, 2e-4);
  const double expect_tail =
      2.0 * mz * std::pow(nu, dom.K + 2) / double(dom.K + 2);
  CHECK(y_tail_only.finite == 0.0);
  CHECK(y_tail_only.tail == doctest::Approx(expect_tail).epsilon(1e-12));
  CHECK(y_tail_only.tail >= expect_tail);  // rigorous upper bound
  CHECK(y_tail_only.total == doctest::Approx(expect_tail).epsilon(1e-12));

  // Add an in-range mode: coordinate (u2-slot, k=2) has weight 2 nu^2.  The
  // finite matvec bounds each entry modulus by |re| + |im| (cheap and within
  // sqrt(2) of sharp), so that is the oracle modulus here; the tail uses the
  // sharp |z|.
  const series::Cplx<Interval> z2{Interval(-1e-3), Interval(4e-4)};
  res.g[1].set_coeff(2, series::ChebSeries<Interval>::constant(z2));
  const auto y2 = prover::bound_Y(ctx, res, ident);
  const double expect_fin = 2.0 * nu * nu * (1e-3 + 4e-4);
  CHECK(y2.finite == doctest::Approx(expect_fin).epsilon(1e-12));
  CHECK(y2.finite >= 2.0 * nu * nu * std::hypot(1e-3, 4e-4));  // still a bound
  CHECK(y2.total == doctest::Approx(expect_fin + expect_tail).epsilon(1e-12));
}

// The second-derivative bound: positive and finite at the triangle, scales
// linearly with the inverse norm, grows with the ball radius, and sits in the
// magnitude range a hand evaluation of the worst pair group gives (~100).
TEST_CASE("Z2 bound: scaling, monotonicity, and magnitude at the triangle") {
  const auto tri = model::triangle_slice(10);
  const prover::Ctx ctx = prover::make_ctx(tri.dom, 1.1);
  const auto xi = model::to_interval(tri);

  const auto z = prover::bound_Z2(ctx, xi, 1.0, 1e-6);
  CHECK(std::isfinite(z.total));
  CHECK(z.total > 10.0);
  CHECK(z.total < 2000.0);
  CHECK(z.gA > 0.0);
  CHECK(z.gB > 0.0);
  CHECK(z.gC > 0.0);
  CHECK(z.gD > 0.0);
  CHECK(z.total == doctest::Approx(std::fmax(std::fmax(z.gA, z.gB),
                                             std::fmax(z.gC, z.gD)))
                       .epsilon(1e-12));

  const auto zbig = prover::bound_Z2(ctx, xi, 1.0, 1e-3);
  CHECK(zbig.total > z.total);
  const auto zsc = prover::bound_Z2(ctx, xi, 2.0, 1e-6);
  CHECK(zsc.total == doctest::Approx(2.0 * z.total).epsilon(1e-12));
}

namespace {

void print_cert(const char* tag, const prover::Certificate& c) {
  std::printf(
      "[%s] ok=%d  Y=%.3e (fin %.3e, tail %.3e)  Z1=%.4f (op %.4f, p1 %.4f, "
      "p2 %.4f; T %.2f/%.2f/%.2f/%.2f G %.3g/%.3g/%.3g)  Z2=%.4g  |A|=%.4f  "
      "kappa=%.4f  p(r)=%.3e vs r=%.1e  %.1fs\n",
      tag, int(c.ok), c.Y.total, c.Y.finite, c.Y.tail, c.Z1.total,
      c.Z1.op_finite, c.Z1.part1, c.Z1.part2, c.Z1.T_a, c.Z1.T_u, c.Z1.T_v,
      c.Z1.T_w, c.Z1.G_u, c.Z1.G_v, c.Z1.G_w, c.Z2.total, c.a_finite_norm,
      c.kappa, c.radii_value, c.r, c.seconds);
}

}  // namespace

// End-to-end certification of the stored equilateral solution at frequency 1:
// the residual is exact to rounding, so Y is tiny, the finite defect is
// moderate (the columns just beyond the finite band dominate it), and the
// contraction inequalities hold at r = 1e-6.
TEST_CASE("end-to-end certification of the exact triangle at frequency one") {
  const auto tri = model::triangle_slice(36);
  const auto A = solver::build_approx_inverse(tri);
  prover::ProveOptions opt;
  opt.nu = 1.1;
  opt.r = 1e-6;
  const auto cert = prover::prove(tri, A, opt);
  print_cert("triangle K=36", cert);

  CHECK(cert.ok);
  CHECK(cert.Y.total < 1e-10);
  CHECK(cert.Z1.total < 0.70);
  CHECK(cert.kappa < 0.70);
  CHECK(cert.radii_value <= cert.r);
  CHECK(cert.a_finite_norm > 0.1);
  CHECK(cert.Z1.T_w > 0.0);
  CHECK(cert.Z2.total > 0.0);
  CHECK(cert.K == 36);
  CHECK(cert.omega_lo == 1.0);
  CHECK(!cert.message.empty());
}

// End-to-end certification of a swept branch on [0.9, 1]: the continuation
// residual is at Newton tolerance on the nodes and the Chebyshev interpolation
// error is small at this width, so the certificate must close.
TEST_CASE("end-to-end certification of a short branch sweep") {
  solver::ContinuationOptions copt;
  copt.dom = model::Domain{28, 8, 0.9, 1.0};
  const auto br = solver::continue_branch(copt);
  REQUIRE(br.ok);

  const auto A = solver::build_approx_inverse(br.branch);
  prover::ProveOptions opt;
  opt.nu = 1.2;
  opt.r = 1e-5;
  const auto cert = prover::prove(br.branch, A, opt);
  print_cert("sweep K=28 N=8", cert);

  CHECK(cert.ok);
  CHECK(cert.Y.total < 1e-6);
  CHECK(cert.kappa < 0.90);
  CHECK(cert.Z1.total < 0.85);
  CHECK(cert.radii_value <= cert.r);
  CHECK(cert.seconds < 300.0);
}
