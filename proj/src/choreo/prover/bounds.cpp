#include "choreo/prover/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <initializer_list>
#include <ostream>
#include <thread>

#include "choreo/common.hpp"
#include "choreo/model/dfassemble.hpp"
#include "choreo/rigor/rounding.hpp"

namespace choreo::prover {

namespace {

using model::Pack;
using model::Residual;
using model::State;
using series::ChebSeries;
using series::Cplx;
using series::FourierCheb;
using series::Layout;

constexpr long kBlockCols = 32;

double now_minus(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void logline(std::ostream* log, const std::string& s) {
  if (log) *log << s << std::endl;
}

// Upper bound of |re + i im| for exact doubles; FE_UPWARD assumed (both the
// squares/sum and the square root then round up).
double abs_up_scalar(double re, double im) {
  return std::sqrt(re * re + im * im);
}

// Splits a rectangle enclosure into center + radius covering the rectangle by
// a disk; FE_UPWARD assumed.
struct Disk {
  double c_re = 0.0, c_im = 0.0, r = 0.0;
};

Disk disk_of(const Cplx<Interval>& z) {
  Disk d;
  d.c_re = z.re.mid();
  d.c_im = z.im.mid();
  const double rr = std::fmax(z.re.hi - d.c_re, d.c_re - z.re.lo);
  const double ri = std::fmax(z.im.hi - d.c_im, d.c_im - z.im.lo);
  d.r = rr + ri;
  return d;
}

Interval vmax(std::initializer_list<Interval> xs) {
  Interval m = *xs.begin();
  for (const Interval& x : xs) m = rigor::imax(m, x);
  return m;
}

// Worst weighted operator column norm over a layout, given the weighted
// modulus column sums S.  A unit element of the even-general class carries the
// conjugate pair of coefficients at modes +-m together, so the pair {m, -m}
// contributes the average of its two column sums over the common weight
// nu^|m|; every other column stands alone over its own weight.  FE_UPWARD
// assumed.
double paired_col_max(const Layout& L, const std::vector<double>& S,
                      const std::vector<double>& icw) {
  double worst = 0.0;
  for (int e = 0; e < L.size(); ++e) {
    const auto& ent = L.entries[size_t(e)];
    const bool two_sided =
        series::kCompParity[size_t(ent.comp)] == series::Parity::EvenGeneral;
    if (two_sided && ent.k != 0) {
      if (ent.k < 0) continue;  // counted from the +k side
      const int e2 = L.index_of(ent.comp, -ent.k);
      worst = std::fmax(worst,
                        0.5 * (S[size_t(e)] + S[size_t(e2)]) * icw[size_t(e)]);
    } else {
      worst = std::fmax(worst, S[size_t(e)] * icw[size_t(e)]);
    }
  }
  return worst;
}

// x_norm of one entry of a RangeAccum column, i.e. |c_0| + 2 sum |c_t| over the
// Chebyshev orders; FE_UPWARD assumed.
double accum_x_norm_up(const RangeAccum& acc, long row, long col) {
  double s = 0.0;
  for (int t = 0; t < acc.orders(); ++t) {
    const double m = acc.abs_up(t, row, col);
    s += (t == 0) ? m : 2.0 * m;
  }
  return s;
}

// Builds the per-order disk matrices of a block of interval entry series.
// FE_UPWARD assumed.  Entry (r, c) of the block is entries[r * bs + c].
std::vector<OrderMat> order_split(const std::vector<ChebSeries<Interval>>& entries,
                                  long rows, long bs) {
  int degmax = 0;
  for (const auto& e : entries) degmax = std::max(degmax, e.degree());
  std::vector<OrderMat> B(size_t(degmax) + 1);
  for (auto& b : B) b.init(rows, bs);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < bs; ++c) {
      const auto& e = entries[size_t(r) * size_t(bs) + size_t(c)];
      for (int m = 0; m <= e.degree(); ++m) {
        if (series::is_zero(e.c[size_t(m)])) continue;
        const Disk d = disk_of(e.c[size_t(m)]);
        B[size_t(m)].re(r, c) = d.c_re;
        B[size_t(m)].im(r, c) = d.c_im;
        B[size_t(m)].rad(r, c) = d.r;
        B[size_t(m)].zero = false;
      }
    }
  return B;
}

}  // namespace

Ctx make_ctx(const model::Domain& dom, double nu) {
  require_input(dom.K >= 1, "make_ctx: K must be at least 1");
  require_input(nu > 1.0, "make_ctx: the norm weight nu must exceed 1");
  const rigor::RoundUpScope up;
  Ctx ctx;
  ctx.dom = dom;
  ctx.nu = nu;
  ctx.LK = series::make_layout(dom.K);
  ctx.L2K = series::make_layout(2 * dom.K);

  const int pmax = 6 * dom.K + 2;
  ctx.pow.resize(size_t(pmax) + 1);
  ctx.pow[0] = Interval(1.0);
  const Interval inu(nu);
  for (int j = 1; j <= pmax; ++j) ctx.pow[size_t(j)] = ctx.pow[size_t(j) - 1] * inu;

  const auto weights = [&](const Layout& L, std::vector<double>& rw,
                           std::vector<double>& icw) {
    rw.resize(size_t(L.size()));
    icw.resize(size_t(L.size()));
    for (int e = 0; e < L.size(); ++e) {
      const double mult = L.multiplicity(e);
      const Interval& p = ctx.pow[size_t(L.nu_exponent(e))];
      rw[size_t(e)] = mult * p.hi;  // FE_UPWARD
      // mult is a small power of two, so mult * p.lo is exact and the directed
      // division gives a true upper bound of the reciprocal weight.
      icw[size_t(e)] = 1.0 / (mult * p.lo);
    }
  };
  std::vector<double> rw2_unused;
  weights(ctx.LK, ctx.rw_up, ctx.icwK_up);
  weights(ctx.L2K, rw2_unused, ctx.icw2K_up);

  ctx.invK1_up = 1.0 / double(dom.K + 1);  // FE_UPWARD
  return ctx;
}

std::vector<ExactCMat> split_orders(const solver::ApproxInverse& A) {
  std::vector<ExactCMat> out;
  out.reserve(A.order.size());
  for (const auto& M : A.order) out.push_back(split_exact(M));
  return out;
}

double op_norm_finite(const Ctx& ctx, const std::vector<ExactCMat>& A) {
  require_input(!A.empty() && A[0].re.rows() == ctx.LK.size(),
                "op_norm_finite: approximate inverse does not match the layout");
  const rigor::RoundUpScope up;
  const long n = ctx.LK.size();
  std::vector<double> S(size_t(n), 0.0);
  for (long c = 0; c < n; ++c) {
    double s = 0.0;
    for (long r = 0; r < n; ++r) {
      double xn = 0.0;
      for (size_t t = 0; t < A.size(); ++t) {
        const double m = abs_up_scalar(A[t].re(r, c), A[t].im(r, c));
        xn += (t == 0) ? m : 2.0 * m;
      }
      s += ctx.rw_up[size_t(r)] * xn;
    }
    S[size_t(c)] = s;
  }
  return paired_col_max(ctx.LK, S, ctx.icwK_up);
}

YBreakdown bound_Y(const Ctx& ctx, const Residual<Interval>& res,
                   const std::vector<ExactCMat>& A) {
  const rigor::RoundUpScope up;
  const long rows = ctx.LK.size();
  const int K = ctx.dom.K;

  // Finite part: || A_K Pi_K F ||, the matrix-vector product accumulated with
  // the same directed kernels as the operator bound (columns of width one).
  const auto coords = model::repr_coords<Interval>(res, ctx.LK);
  std::vector<OrderMat> B = order_split(coords, rows, 1);
  RangeAccum acc;
  acc.init(int(A.size()) + int(B.size()), rows, 1);
  for (int n = 0; n < int(A.size()); ++n)
    for (int m = 0; m < int(B.size()); ++m)
      acc.add_product_cheb(n + m, std::abs(n - m), A[size_t(n)], B[size_t(m)]);

  YBreakdown y;
  for (long r = 0; r < rows; ++r)  // FE_UPWARD after the accumulation passes
    y.finite += ctx.rw_up[size_t(r)] * accum_x_norm_up(acc, r, 0);

  // Tail part: the tail inverse acts mode-by-mode as 1/(i k) on the residual
  // slots, so the weighted norm of the tail is summed exactly (the f residual
  // has no modes beyond K by construction and contributes nothing).
  Interval tail(0.0);
  const auto add_tail = [&](const FourierCheb<Interval>& phi) {
    for (int k = -phi.K; k <= phi.K; ++k) {
      if (std::abs(k) <= K) continue;
      const Interval xn = series::x_norm(phi.coeff(k));
      tail = tail + xn * ctx.pow[size_t(std::abs(k))] / Interval(double(std::abs(k)));
    }
  };
  for (int j = 0; j < 3; ++j) add_tail(res.g[size_t(j)]);
  for (int j = 0; j < 3; ++j) add_tail(res.f[size_t(j)]);
  add_tail(res.h);
  y.tail = tail.hi;
  y.total = y.finite + y.tail;  // FE_UPWARD
  return y;
}

namespace {

// Tail-row and far-column norms of DF around the branch for column modes
// beyond 2K; the finite-row mass of those columns is bounded through the tail
// norms of the multipliers (the G terms), and the tail rows |k| > K through
// per-multiplier sums sharpened by the column position: a coefficient at
// offset l = k - m weighs nu^{|k| - |m|} <= nu^{max(-|l|, |l| - 2(2K+1))} and
// divides by |k| >= K+1 when l < 0, by |k| >= 2K+1 when l >= 0.
struct TailTerms {
  Interval T_a, T_u, T_v, T_w;  // tail-row column sums by column slot
  Interval G_u, G_v, G_w;       // finite-row column sums, columns beyond 2K
};

TailTerms tail_terms(const Ctx& ctx, const Pack<Interval>& p) {
  const int K = ctx.dom.K;
  const auto& pw = ctx.pow;
  const Interval sqrt3 = rigor::isqrt3();

  const Interval invK1(ctx.invK1_up);
  const Interval inv2K1 = Interval(1.0) / Interval(double(2 * K + 1));
  // Worst nu^{|m+l| - m} over columns m >= 2K+1 whose row k = m + l lands in
  // the tail, for an offset l with |l| = al pointing back toward the band:
  // nu^{-al} when m >= al, nu^{al - 2m} <= nu^{al - 2(2K+1)} otherwise, and the
  // second case needs m <= al - K - 1, hence only arises for al >= 3K+2.
  const auto far_w = [&](int al) {
    Interval w = Interval(1.0) / pw[size_t(al)];
    if (al >= 3 * K + 2) {
      const int e = al - 2 * (2 * K + 1);
      w = rigor::imax(w, e >= 0 ? pw[size_t(e)] : Interval(1.0) / pw[size_t(-e)]);
    }
    return w;
  };
  // Sharp far-column tail sum of a Toeplitz multiplier: offsets pointing back
  // toward the band weigh nu^{|k|-m} <= far_w and divide by |k| >= K+1, while
  // offsets pointing away weigh nu^{al} and divide by |k| >= 2K+1+al.  The two
  // sides of a column pair swap the roles of the offset signs (the mirrored
  // side sees the reflected series), and the Hankel pieces reduce to the same
  // symmetric maximum, so the worst of the two sums covers every case.
  const auto sharp_far = [&](const FourierCheb<Interval>& phi) {
    Interval s1(0.0), s2(0.0);
    for (int l = -phi.K; l <= phi.K; ++l) {
      const Interval xn = series::x_norm(phi.coeff(l));
      if (xn.hi == 0.0) continue;
      const int al = std::abs(l);
      const Interval toward = far_w(al) * invK1;
      const Interval away = pw[size_t(al)] / Interval(double(2 * K + 1 + al));
      s1 = s1 + ((l < 0) ? toward : away) * xn;
      s2 = s2 + ((l > 0) ? toward : away) * xn;
    }
    return rigor::imax(s1, s2);
  };

  TailTerms t;
  t.T_a = series::nu_norm_tail(p.m_h_a, K, pw) * invK1;

  const Interval x_om2 = series::x_norm(p.om2);
  const Interval x_2om = Interval(2.0) * series::x_norm(p.om);
  const Interval sf_w3 = sharp_far(p.w3) + sharp_far(p.Rw3);

  t.T_u = Interval(0.0);
  t.T_v = Interval(0.0);
  t.T_w = sharp_far(p.m_h_w);
  for (int i = 0; i < 3; ++i) {
    const Interval cor = (i < 2) ? Interval(1.0) : Interval(0.0);
    t.T_u = rigor::imax(t.T_u, cor * x_om2 * inv2K1 +
                                   sqrt3 * (sf_w3 + sharp_far(p.m_h_u[size_t(i)])));
    t.T_v = rigor::imax(t.T_v, cor * x_2om * inv2K1 +
                                   sqrt3 * sharp_far(p.m_h_v[size_t(i)]));
    t.T_w = t.T_w + sharp_far(p.m_g_w[size_t(i)]) + sharp_far(p.hg_w[size_t(i)]);
  }
  t.T_v = inv2K1 + t.T_v;

  // Far columns: only coefficient indices beyond K survive in the multiplier
  // convolutions, and the scalar rows contribute through the evaluated series
  // divided by the column weight nu^{|m|} <= nu^{-(2K+1)}.
  const Interval wfar = Interval(1.0) / pw[size_t(2 * K + 1)];
  const Interval n_w3_t = series::nu_norm_tail(p.w3, K, pw);
  t.G_u = Interval(0.0);
  t.G_v = Interval(0.0);
  for (int i = 0; i < 3; ++i) {
    const Interval eta = (i == 2) ? Interval(1.0) : Interval(0.0);
    t.G_u = rigor::imax(
        t.G_u, (eta + series::x_norm(p.e_gam_u[size_t(i)])) * wfar +
                   Interval(2.0) * n_w3_t +
                   series::nu_norm_tail(p.m_h_u[size_t(i)], K, pw));
    t.G_v = rigor::imax(t.G_v, series::nu_norm_tail(p.m_h_v[size_t(i)], K, pw));
  }
  t.G_u = sqrt3 * t.G_u;
  t.G_v = sqrt3 * t.G_v;
  t.G_w = series::x_norm(p.e_gam_w) * wfar + series::nu_norm_tail(p.m_h_w, K, pw);
  for (int i = 0; i < 3; ++i)
    t.G_w = t.G_w + series::nu_norm_tail(p.m_g_w[size_t(i)], K, pw) +
            rigor::imax(series::nu_norm_tail(p.hg_w[size_t(i)], K, pw),
                        series::nu_norm_tail(p.m_g_w2[size_t(i)], K, pw));
  return t;
}

// Exact tail-row column sums for the computed columns (modes up to 2K).  The
// tail of the approximate inverse is diagonal, 1/(i k) on row |k| > K, and the
// derivative diagonals (i k from the time derivatives, and the identity of the
// velocity definition) cancel exactly against the identity there, so row k
// contributes nu^|k| |mult_{k-m}| / |k| to column m for each multiplier of the
// equations -- summed here over the actual coefficients.  Columns well inside
// the band pick up only the far coefficients of the multipliers and get almost
// nothing; only columns near the edge of the band see real tail mass.
// FE_UPWARD assumed.  Returned sums are unnormalized (no column weight).
std::vector<double> tail_row_colsums(const Ctx& ctx, const Pack<Interval>& p) {
  const int K = ctx.dom.K;
  const auto& pw = ctx.pow;
  const double s3 = rigor::isqrt3().hi;

  // Upper x-norm per two-sided Fourier coefficient of a multiplier.
  const auto xnvec = [&](const FourierCheb<Interval>& phi) {
    std::vector<double> xn(size_t(2 * phi.K) + 1, 0.0);
    for (int l = -phi.K; l <= phi.K; ++l)
      xn[size_t(l + phi.K)] = series::x_norm(phi.coeff(l)).hi;
    return xn;
  };
  const auto xw3 = xnvec(p.w3), xrw3 = xnvec(p.Rw3);
  const auto xmhw = xnvec(p.m_h_w), xmha = xnvec(p.m_h_a);
  std::array<std::vector<double>, 3> xmhu, xmhv, xmgw, xhgw;
  for (int i = 0; i < 3; ++i) {
    xmhu[size_t(i)] = xnvec(p.m_h_u[size_t(i)]);
    xmhv[size_t(i)] = xnvec(p.m_h_v[size_t(i)]);
    xmgw[size_t(i)] = xnvec(p.m_g_w[size_t(i)]);
    xhgw[size_t(i)] = xnvec(p.hg_w[size_t(i)]);
  }

  // Toeplitz tail sum: sum_{|k| > K} nu^{|k|} xn[k - m] / |k|.  The Hankel
  // pieces (coefficient index k + m) are the same sum at -m.
  const auto side = [&](const std::vector<double>& xn, int m) {
    const int Kphi = (int(xn.size()) - 1) / 2;
    double s = 0.0;
    for (int l = -Kphi; l <= Kphi; ++l) {
      const int k = m + l;
      if (std::abs(k) <= K) continue;
      if (xn[size_t(l + Kphi)] == 0.0) continue;
      s += pw[size_t(std::abs(k))].hi * xn[size_t(l + Kphi)] / double(std::abs(k));
    }
    return s;
  };
  // Shift-deficit modulus of both I - S and I - S^2 at column mode m.
  const auto deficit = [&](int m) { return (m % 3 == 0) ? 0.0 : s3; };

  const double x_om2 = series::x_norm(p.om2).hi;
  const double x_2om = (Interval(2.0) * series::x_norm(p.om)).hi;

  std::vector<double> S(size_t(ctx.L2K.size()), 0.0);
  for (int e = 0; e < ctx.L2K.size(); ++e) {
    const auto& ent = ctx.L2K.entries[size_t(e)];
    const int m = ent.k, am = std::abs(m);
    double s = 0.0;
    switch (ent.comp) {
      case series::CompU1:
      case series::CompU2:
      case series::CompU3: {
        const int i = ent.comp - series::CompU1;
        const double d = deficit(m);
        if (d > 0.0) {
          s += d * (side(xw3, m) + side(xw3, -m) + side(xrw3, m) + side(xrw3, -m));
          s += d * (side(xmhu[size_t(i)], m) + side(xmhu[size_t(i)], -m));
        }
        if (i < 2 && am > K) s += 2.0 * pw[size_t(am)].hi * x_om2 / double(am);
        break;
      }
      case series::CompV1:
      case series::CompV2:
      case series::CompV3: {
        const int i = ent.comp - series::CompV1;
        const double d = deficit(m);
        if (d > 0.0) s += d * (side(xmhv[size_t(i)], m) + side(xmhv[size_t(i)], -m));
        if (am > K) {
          s += 2.0 * pw[size_t(am)].hi / double(am);  // velocity definition row
          if (i < 2) s += 2.0 * pw[size_t(am)].hi * x_2om / double(am);
        }
        break;
      }
      case series::CompW: {
        for (int j = 0; j < 3; ++j)
          s += side(xmgw[size_t(j)], m) + side(xhgw[size_t(j)], -m);
        s += side(xmhw, m);
        break;
      }
      case series::CompA:
        s += side(xmha, 0);
        break;
      default:
        break;  // beta and alpha columns reach no tail row
    }
    S[size_t(e)] = s;
  }
  return S;
}

// Processes one block of columns of Pi_K - A_K (Pi_K DF Pi_2K) and writes the
// weighted modulus column sums into S[c0..c1).  Runs on a worker thread:
// installs its own rounding mode (the fenv is thread local).
void z1_block(const Ctx& ctx, const Pack<Interval>& p,
              const std::vector<ExactCMat>& A, long c0, long c1,
              std::vector<double>& S) {
  rigor::set_round_upward();
  const long rows = ctx.LK.size();
  const long bs = c1 - c0;

  std::vector<ChebSeries<Interval>> entries(size_t(rows) * size_t(bs));
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < bs; ++c)
      entries[size_t(r) * size_t(bs) + size_t(c)] =
          model::df_entry(p, ctx.LK, ctx.L2K, int(r), int(c0 + c));

  const std::vector<OrderMat> B = order_split(entries, rows, bs);
  entries.clear();
  entries.shrink_to_fit();

  RangeAccum acc;
  acc.init(int(A.size()) + int(B.size()), rows, bs);
  for (int n = 0; n < int(A.size()); ++n)
    for (int m = 0; m < int(B.size()); ++m)
      acc.add_product_cheb(n + m, std::abs(n - m), A[size_t(n)], B[size_t(m)]);

  for (long c = 0; c < bs; ++c) {
    const auto& ent = ctx.L2K.entries[size_t(c0 + c)];
    const int r0 = ctx.LK.index_of(ent.comp, ent.k);
    if (r0 >= 0) acc.subtract_one(r0, c);
  }

  rigor::set_round_upward();
  for (long c = 0; c < bs; ++c) {
    double s = 0.0;
    for (long r = 0; r < rows; ++r) s += ctx.rw_up[size_t(r)] * accum_x_norm_up(acc, r, c);
    S[size_t(c0 + c)] = s;
  }
}

}  // namespace

Z1Breakdown bound_Z1(const Ctx& ctx, const Pack<Interval>& pack,
                     const std::vector<ExactCMat>& A, double a_finite_norm,
                     int threads, std::ostream* log) {
  require_input(threads >= 1, "bound_Z1: threads must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();

  const long cols = ctx.L2K.size();
  const long nblocks = (cols + kBlockCols - 1) / kBlockCols;
  std::vector<double> colsum(size_t(cols), 0.0);

  const auto worker = [&](long tid) {
    for (long b = tid; b < nblocks; b += threads) {
      const long c0 = b * kBlockCols;
      const long c1 = std::min(cols, c0 + kBlockCols);
      z1_block(ctx, pack, A, c0, c1, colsum);
      if (log && tid == 0) {
        logline(log, "  [z1] column block " + std::to_string(b + 1) + "/" +
                         std::to_string(nblocks) + " done at " +
                         std::to_string(now_minus(t0)) + " s");
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i)
      pool.emplace_back([&, i] {
        try {
          worker(i);
        } catch (...) {
          errs[size_t(i)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  const rigor::RoundUpScope up;
  Z1Breakdown z;
  z.op_finite = paired_col_max(ctx.L2K, colsum, ctx.icw2K_up);

  // Column norms of the computed band: finite-row product sums plus the exact
  // tail-row sums, maximized jointly so each column carries its own tail.
  const std::vector<double> tails = tail_row_colsums(ctx, pack);
  std::vector<double> full(colsum.size());
  for (size_t c = 0; c < colsum.size(); ++c) full[c] = colsum[c] + tails[c];
  z.part1 = paired_col_max(ctx.L2K, full, ctx.icw2K_up);

  if (log) {
    long worst = 0;
    double wval = 0.0;
    for (long c = 0; c < ctx.L2K.size(); ++c) {
      const double v = full[size_t(c)] * ctx.icw2K_up[size_t(c)];
      if (v > wval) {
        wval = v;
        worst = c;
      }
    }
    const auto& went = ctx.L2K.entries[size_t(worst)];
    logline(log, "  [z1] worst column " + std::string(series::comp_name(went.comp)) +
                     " k=" + std::to_string(went.k) + ": finite " +
                     std::to_string(colsum[size_t(worst)] * ctx.icw2K_up[size_t(worst)]) +
                     ", tail " +
                     std::to_string(tails[size_t(worst)] * ctx.icw2K_up[size_t(worst)]));
  }

  const TailTerms t = tail_terms(ctx, pack);
  z.T_a = t.T_a.hi;
  z.T_u = t.T_u.hi;
  z.T_v = t.T_v.hi;
  z.T_w = t.T_w.hi;
  z.G_u = t.G_u.hi;
  z.G_v = t.G_v.hi;
  z.G_w = t.G_w.hi;

  const double tmax2 = std::fmax(z.T_u, std::fmax(z.T_v, z.T_w));
  const double gmax = std::fmax(z.G_u, std::fmax(z.G_v, z.G_w));
  z.part2 = a_finite_norm * gmax + tmax2;
  z.total = std::fmax(z.part1, z.part2);
  return z;
}

Z2Breakdown bound_Z2(const Ctx& ctx, const State<Interval>& x, double a_norm,
                     double r) {
  const rigor::RoundUpScope up;
  const auto& pw = ctx.pow;
  const Interval ir(r);
  const Interval sqrt3 = rigor::isqrt3();

  // Norm bounds of the components anywhere on the certification ball.
  std::array<Interval, 3> hu, hv;
  for (int i = 0; i < 3; ++i) {
    hu[size_t(i)] = series::nu_norm(x.u[size_t(i)], pw) + ir;
    hv[size_t(i)] = series::nu_norm(x.v[size_t(i)], pw) + ir;
  }
  const Interval hw = series::nu_norm(x.w, pw) + ir;
  const Interval ha = series::x_norm(x.a) + ir;

  const Interval hw2 = hw * hw, hw3 = hw2 * hw;
  const Interval i2(2.0), i3(3.0), i6(6.0), i9(9.0);

  // Second derivative of the map paired against each slot of the perturbation:
  // groups by the first slot (a | u_i | v_i | w), each the sum over equation
  // families of the worst bilinear multiplier norm, with the shift-deficit
  // factor sqrt(3) per difference of the perturbation absorbed in the numeric
  // prefixes (9 = 3*3, 18 = 6*3, 12 = 4*3; odd powers keep sqrt(3) explicit).
  Z2Breakdown z;

  const Interval gA = i6 * rigor::imax(hw2 * hu[2], hw * hu[2] * hu[2]) +
                      i3 * vmax({hw3 * hv[2], hw3 * hu[2], i3 * hw2 * hu[2] * hv[2]});

  Interval gB(0.0), gC(0.0), gD(0.0);
  for (int i = 0; i < 3; ++i) {
    const Interval del = (i == 2) ? Interval(1.0) : Interval(0.0);
    const Interval e = (i == 2) ? ha : Interval(1.0);
    const Interval bi =
        i6 * vmax({del * hw2 * hu[size_t(i)], e * hw2, i2 * e * hw * hu[size_t(i)]}) +
        i6 * sqrt3 * hw2 +
        i3 * vmax({del * hw3 * hv[size_t(i)], e * hw3, i3 * e * hw2 * hv[size_t(i)]});
    gB = rigor::imax(gB, bi);
    const Interval ci =
        i3 * vmax({del * hw3 * hu[size_t(i)], e * hw3, i3 * e * hw2 * hu[size_t(i)]});
    gC = rigor::imax(gC, ci);
    gD = gD + i6 * sqrt3 * rigor::imax(hw2, i2 * hw * hu[size_t(i)]);
  }

  const Interval quad = hu[0] * hu[0] + hu[1] * hu[1] + ha * hu[2] * hu[2];
  const Interval mixed = hu[0] * hv[0] + hu[1] * hv[1] + ha * hu[2] * hv[2];
  gD = gD +
       i6 * vmax({hw * hu[2] * hu[2], i2 * hw * hu[0], i2 * hw * hu[1],
                  i2 * hw * ha * hu[2], quad}) +
       i9 * vmax({hw2 * hu[2] * hv[2], hw2 * hv[0], hw2 * hv[1], hw2 * ha * hv[2],
                  hw2 * hu[0], hw2 * hu[1], hw2 * ha * hu[2], i2 * hw * mixed});

  z.gA = gA.hi;
  z.gB = gB.hi;
  z.gC = gC.hi;
  z.gD = gD.hi;
  const Interval worst = vmax({gA, gB, gC, gD});
  z.total = (Interval(a_norm) * worst).hi;
  return z;
}

Certificate prove(const State<double>& branch, const solver::ApproxInverse& A,
                  const ProveOptions& opt) {
  require_input(opt.nu > 1.0, "prove: nu must exceed 1");
  require_input(opt.r > 0.0 && std::isfinite(opt.r), "prove: r must be positive");
  require_input(branch.dom.K == A.K && branch.dom.N == A.N,
                "prove: approximate inverse frame does not match the branch");
  require_invariant(rigor::directed_rounding_selftest(),
                    "prove: directed rounding is not effective on this platform");

  const auto t0 = std::chrono::steady_clock::now();
  Certificate cert;
  cert.K = branch.dom.K;
  cert.N = branch.dom.N;
  cert.omega_lo = branch.dom.omega_lo;
  cert.omega_hi = branch.dom.omega_hi;
  cert.nu = opt.nu;
  cert.r = opt.r;

  const Ctx ctx = make_ctx(branch.dom, opt.nu);
  require_input(!A.order.empty() && A.order[0].rows() == ctx.LK.size(),
                "prove: approximate inverse size does not match the layout");

  const rigor::RoundUpScope up;
  logline(opt.log, "[prove] K=" + std::to_string(cert.K) + " N=" + std::to_string(cert.N) +
                       " nu=" + std::to_string(opt.nu) + " r=" + std::to_string(opt.r));

  const State<Interval> xi = model::to_interval(branch);
  const Pack<Interval> pack = model::make_pack(xi);
  logline(opt.log, "[prove] interval pack built at " + std::to_string(now_minus(t0)) + " s");

  const Residual<Interval> res = model::eval_F(xi, pack);
  logline(opt.log, "[prove] residual enclosure at " + std::to_string(now_minus(t0)) + " s");

  const std::vector<ExactCMat> Asplit = split_orders(A);
  cert.a_finite_norm = op_norm_finite(ctx, Asplit);
  cert.a_norm = std::fmax(cert.a_finite_norm, ctx.invK1_up);
  logline(opt.log, "[prove] ||A_K|| = " + std::to_string(cert.a_finite_norm));

  cert.Y = bound_Y(ctx, res, Asplit);
  logline(opt.log, "[prove] Y = " + std::to_string(cert.Y.total) + " (finite " +
                       std::to_string(cert.Y.finite) + ", tail " +
                       std::to_string(cert.Y.tail) + ") at " +
                       std::to_string(now_minus(t0)) + " s");

  cert.Z1 = bound_Z1(ctx, pack, Asplit, cert.a_finite_norm, opt.threads, opt.log);
  logline(opt.log, "[prove] Z1 = " + std::to_string(cert.Z1.total) + " (finite " +
                       std::to_string(cert.Z1.op_finite) + ", parts " +
                       std::to_string(cert.Z1.part1) + " / " +
                       std::to_string(cert.Z1.part2) + ") at " +
                       std::to_string(now_minus(t0)) + " s");

  cert.Z2 = bound_Z2(ctx, xi, cert.a_norm, opt.r);
  logline(opt.log, "[prove] Z2 = " + std::to_string(cert.Z2.total));

  // Contraction on the ball: Y + Z1 r + Z2 r^2 / 2 <= r with rate Z1 + Z2 r < 1.
  rigor::set_round_upward();
  cert.radii_value = cert.Y.total + cert.Z1.total * opt.r + 0.5 * cert.Z2.total * opt.r * opt.r;
  cert.kappa = cert.Z1.total + cert.Z2.total * opt.r;
  const bool finite = std::isfinite(cert.radii_value) && std::isfinite(cert.kappa) &&
                      std::isfinite(cert.a_norm);
  cert.ok = finite && cert.radii_value <= opt.r && cert.kappa < 1.0;
  cert.seconds = now_minus(t0);
  cert.message = cert.ok
                     ? "contraction certified: unique zero within r of the branch"
                     : "contraction NOT certified";
  logline(opt.log, std::string("[prove] ") + (cert.ok ? "OK" : "FAILED") +
                       ": p(r) = " + std::to_string(cert.radii_value) +
                       " vs r = " + std::to_string(opt.r) +
                       ", kappa = " + std::to_string(cert.kappa) + ", " +
                       std::to_string(cert.seconds) + " s");
  return cert;
}

}  // namespace choreo::prover
