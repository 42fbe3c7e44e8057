#include "choreo/solver/continuation.hpp"

#include <cmath>
#include <utility>

#include "choreo/common.hpp"
#include "choreo/model/triangle.hpp"
#include "choreo/solver/chebnodes.hpp"

namespace choreo::solver {

using model::Domain;
using model::State;
using series::ChebSeries;
using series::Cplx;
using series::FourierCheb;

namespace {

State<double> with_omega(const State<double>& x, double om) {
  State<double> y = x;
  y.dom.omega_lo = om;
  y.dom.omega_hi = om;
  return y;
}

bool advance(State<double>& x, double om_target, int depth,
             const NewtonOptions& base, NodeInfo& info, std::string& err) {
  State<double> trial = with_omega(x, om_target);
  NewtonOptions nopt = base;
  nopt.reduced = (om_target == 0.0);
  const NewtonReport rep = newton_refine(trial, nopt);
  if (rep.converged) {
    x = std::move(trial);
    info.iterations = rep.iterations;
    info.residual = rep.residual;
    return true;
  }
  if (depth <= 0) {
    err = "continuation stalled near frequency " + std::to_string(om_target) +
          " (residual " + std::to_string(rep.residual) + ")";
    return false;
  }
  const double om_mid = 0.5 * (x.dom.omega_lo + om_target);
  ++info.substeps;
  return advance(x, om_mid, depth - 1, base, info, err) &&
         advance(x, om_target, depth - 1, base, info, err);
}

}  // namespace

State<double> slice_state(const State<double>& x, double s) {
  Domain pt = x.dom;
  const double om = model::omega_of_s(x.dom, s);
  pt.N = 0;
  pt.omega_lo = om;
  pt.omega_hi = om;
  State<double> y = State<double>::zeros(pt);
  for (int comp = 0; comp < series::kNumComps; ++comp) {
    if (comp <= series::CompAlpha)
      model::comp_scalar(y, comp).c[0] = series::eval(model::comp_scalar(x, comp), s);
    else
      model::comp_series(y, comp) = series::slice_at(model::comp_series(x, comp), s);
  }
  return y;
}

namespace {

// --- endpoint exactization ---------------------------------------------------
// The pinned identities are statements about the canonical endpoint sums
//   eval_at_one  : sum_n c_n          (ascending n)
//   eval_at_minus_one : sum_n (-1)^n c_n   (ascending n)
// and "equals the datum" is meant bitwise, so the corrections below move the
// top coefficients until those floating-point sums land exactly on target.
// Each routine is idempotent: sequences already on target are left untouched.
// The corrections are interpolation dust, of the order of the solve tolerance.

double nudge(double x, bool up) {
  return std::nextafter(x, up ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity());
}

// Ascending sum of r[0..m].
double head_sum(const std::vector<double>& r, int m) {
  double s = 0.0;
  for (int n = 0; n <= m; ++n) s += r[size_t(n)];
  return s;
}

// Ascending alternating sum of r[0..m].
double head_alt(const std::vector<double>& r, int m) {
  double s = 0.0;
  for (int n = 0; n <= m; ++n) s += (n % 2 == 0) ? r[size_t(n)] : -r[size_t(n)];
  return s;
}

// Make the plain sum equal T exactly by moving r[N].  The candidate T - pre is
// within an ulp or two; walking it by ulps crosses T because the partial sums
// in play are of comparable scale (coefficients of a converged series).
bool exact_sum(std::vector<double>& r, double T) {
  const int N = int(r.size()) - 1;
  const double pre = head_sum(r, N - 1);
  if (pre + r[size_t(N)] == T) return true;
  double y = T - pre;
  for (int k = 0; k < 256 && pre + y != T; ++k) y = nudge(y, pre + y < T);
  if (pre + y != T) return false;
  r[size_t(N)] = y;
  return true;
}

// Make the alternating sum equal 0 exactly by moving r[N]: the last addition
// is  a + (-a)  which is bitwise zero.  Always succeeds.
void exact_alt(std::vector<double>& r) {
  const int N = int(r.size()) - 1;
  const double amid = head_alt(r, N - 1);
  const double sn = (N % 2 == 0) ? 1.0 : -1.0;
  r[size_t(N)] = -sn * amid;
}

// Make the plain sum equal T and the alternating sum equal 0, both exactly,
// by moving r[N-1] and r[N].  For each trial top-but-one coefficient x the
// top coefficient is forced by the alternating constraint (exact negation),
// which leaves a one-parameter sweep for the plain sum; its steps can be two
// ulps wide, so a miss reshuffles the roundings via r[N-2] and retries.
bool exact_sum_alt(std::vector<double>& r, double T) {
  const int N = int(r.size()) - 1;
  if (N < 2) return false;
  if (head_sum(r, N) == T && head_alt(r, N) == 0.0) return true;
  const double sn = (N % 2 == 0) ? 1.0 : -1.0;
  const double x0 = r[size_t(N - 1)];
  const double z0 = r[size_t(N - 2)];
  for (int j = 0; j < 9; ++j) {
    double z = z0;
    for (int i = 0; i < (j + 1) / 2; ++i) z = nudge(z, j % 2 == 1);
    r[size_t(N - 2)] = z;
    const double spp = head_sum(r, N - 2);
    const double app = head_alt(r, N - 2);
    double x = x0;
    for (int k = 0; k < 257; ++k) {
      const double amid = app + (-sn) * x;
      const double y = -sn * amid;
      if ((spp + x) + y == T) {
        r[size_t(N - 1)] = x;
        r[size_t(N)] = y;
        return true;
      }
      // sweep x outward: 0, +1, -1, +2, -2, ... ulps from the current value
      const int step = k / 2 + 1;
      x = x0;
      for (int i = 0; i < step; ++i) x = nudge(x, k % 2 == 0);
    }
  }
  r[size_t(N - 2)] = z0;
  return false;
}

}  // namespace

void pin_endpoints(State<double>& br) {
  const Domain dom = br.dom;
  const int N = dom.N;
  const int K = dom.K;
  if (N < 1) return;
  const bool pin_one = (dom.omega_hi == 1.0);
  const bool pin_zero = (dom.omega_lo == 0.0);
  if (!pin_one && !pin_zero) return;
  const State<double> tri = model::triangle_slice(K);

  // Two linear constraints per coefficient sequence c_0..c_N:
  //   sum_n c_n         = value at s = +1  (the triangle datum), and
  //   sum_n (-1)^n c_n  = 0 at s = -1      (beta, u1, v1 only, planar frame).
  auto adjust = [&](std::vector<Cplx<double>>& c, size_t base, size_t stride,
                    const Cplx<double>& target_one, bool constrain_zero) {
    for (int ch = 0; ch < 2; ++ch) {
      std::vector<double> r(size_t(N) + 1);
      for (int n = 0; n <= N; ++n) {
        const Cplx<double>& cn = c[base + size_t(n) * stride];
        r[size_t(n)] = ch == 0 ? cn.re : cn.im;
      }
      const double T = ch == 0 ? target_one.re : target_one.im;
      bool ok = true;
      if (pin_one && constrain_zero && pin_zero)
        ok = exact_sum_alt(r, T);
      else if (pin_one)
        ok = exact_sum(r, T);
      else if (constrain_zero && pin_zero)
        exact_alt(r);
      require(ok, "pin_endpoints: endpoint sum exactization failed");
      for (int n = 0; n <= N; ++n) {
        Cplx<double>& cn = c[base + size_t(n) * stride];
        (ch == 0 ? cn.re : cn.im) = r[size_t(n)];
      }
    }
  };

  for (int comp = 0; comp < series::kNumComps; ++comp) {
    const bool constrained =
        comp == series::CompBeta || comp == series::CompU1 || comp == series::CompV1;
    if (comp <= series::CompAlpha) {
      adjust(model::comp_scalar(br, comp).c, 0, 1, Cplx<double>{}, constrained);
      continue;
    }
    auto& phi = model::comp_series(br, comp);
    const auto& tphi = model::comp_series(tri, comp);
    for (int k = -K; k <= K; ++k)
      adjust(phi.c, size_t(phi.idx(k, 0)), 1, tphi.get(k, 0), constrained);
  }
}

BranchResult continue_branch(const ContinuationOptions& opt) {
  BranchResult res;
  const Domain dom = opt.dom;
  require_input(dom.K >= 4 && dom.N >= 1, "continuation: frame too small");
  require_input(dom.omega_hi == 1.0, "continuation: the family is seeded at frequency 1");
  require_input(dom.omega_lo >= 0.0 && dom.omega_lo < dom.omega_hi,
                "continuation: bad frequency range");

  const std::vector<double> grid = cgl_nodes(dom.N);

  State<double> cur = model::triangle_slice(dom.K);
  cur.dom.nu = dom.nu;
  {
    NodeInfo seed;
    seed.s = 1.0;
    seed.omega = 1.0;
    res.nodes.push_back(cur);
    res.info.push_back(seed);
  }

  for (int j = 1; j <= dom.N; ++j) {
    NodeInfo info;
    info.s = grid[size_t(j)];
    info.omega = model::omega_of_s(dom, grid[size_t(j)]);
    if (!advance(cur, info.omega, opt.max_depth, opt.newton, info, res.message))
      return res;
    res.nodes.push_back(cur);
    res.info.push_back(info);
  }

  // Interpolate the per-node slices into the global frame, one coefficient
  // sequence at a time.
  State<double> br = State<double>::zeros(dom);
  std::vector<double> fre(size_t(dom.N) + 1), fim(size_t(dom.N) + 1);
  for (int comp = 0; comp < series::kNumComps; ++comp) {
    if (comp <= series::CompAlpha) {
      for (int j = 0; j <= dom.N; ++j)
        fre[size_t(j)] = model::comp_scalar(res.nodes[size_t(j)], comp).c[0].re;
      const auto c = cheb_transform(fre);
      auto& sc = model::comp_scalar(br, comp);
      for (int n = 0; n <= dom.N; ++n) sc.c[size_t(n)].re = c[size_t(n)];
      continue;
    }
    auto& phi = model::comp_series(br, comp);
    for (int k = -dom.K; k <= dom.K; ++k) {
      for (int j = 0; j <= dom.N; ++j) {
        const Cplx<double> z = model::comp_series(res.nodes[size_t(j)], comp).get(k, 0);
        fre[size_t(j)] = z.re;
        fim[size_t(j)] = z.im;
      }
      const auto cre = cheb_transform(fre);
      const auto cim = cheb_transform(fim);
      for (int n = 0; n <= dom.N; ++n)
        phi.at(k, n) = Cplx<double>{cre[size_t(n)], cim[size_t(n)]};
    }
  }

  pin_endpoints(br);
  require_invariant(model::off_class_residual(br) < 1e-12,
                    "continuation: interpolated branch left the symmetry classes");

  res.branch = std::move(br);
  res.ok = true;
  return res;
}

}  // namespace choreo::solver
