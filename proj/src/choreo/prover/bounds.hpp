#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "choreo/model/feval.hpp"
#include "choreo/model/state.hpp"
#include "choreo/prover/matrixops.hpp"
#include "choreo/rigor/interval.hpp"
#include "choreo/series/layout.hpp"
#include "choreo/solver/ainv.hpp"

namespace choreo::prover {

using rigor::Interval;

// Shared weight tables for the sequence-space norm: rigorous powers of nu and
// directed upper bounds of the row weights (multiplicity * nu^k) and of the
// reciprocal column weights, for both the solution layout (modes <= K) and the
// extended column layout (modes <= 2K) the finite bound is evaluated on.
struct Ctx {
  model::Domain dom;
  double nu = 0.0;
  series::Layout LK, L2K;
  std::vector<Interval> pow;       // nu^j for j = 0 .. 6K+2 (tail rows reach 6K)
  std::vector<double> rw_up;       // row weights of LK entries, rounded up
  std::vector<double> icwK_up;     // 1 / column weight, LK entries, rounded up
  std::vector<double> icw2K_up;    // 1 / column weight, L2K entries, rounded up
  double invK1_up = 0.0;           // 1 / (K + 1), rounded up
};

Ctx make_ctx(const model::Domain& dom, double nu);

// Per-order exact splits of the finite approximate inverse.
std::vector<ExactCMat> split_orders(const solver::ApproxInverse& A);

// Weighted operator norm of the finite block A_K (maximum over columns of the
// weighted modulus column sum over the reciprocal column weight).
double op_norm_finite(const Ctx& ctx, const std::vector<ExactCMat>& A);

struct YBreakdown {
  double finite = 0.0;  // || A_K Pi_K F(xbar) ||
  double tail = 0.0;    // sum over |k| > K of nu^|k| x_norm(F_k) / |k|
  double total = 0.0;
};

struct Z1Breakdown {
  double op_finite = 0.0;  // || Pi_K - A_K (Pi_K DF Pi_2K) ||, finite rows only
  // Far-column tail-row sums by column slot, row divisors included.
  double T_a = 0.0, T_u = 0.0, T_v = 0.0, T_w = 0.0;
  double G_u = 0.0, G_v = 0.0, G_w = 0.0;  // finite-row sums on far columns
  double part1 = 0.0;  // columns with modes <= 2K, exact tail rows per column
  double part2 = 0.0;  // columns with modes > 2K
  double total = 0.0;
};

struct Z2Breakdown {
  double gA = 0.0, gB = 0.0, gC = 0.0, gD = 0.0;  // worst pair sums per slot
  double total = 0.0;
};

YBreakdown bound_Y(const Ctx& ctx, const model::Residual<Interval>& res,
                   const std::vector<ExactCMat>& A);

Z1Breakdown bound_Z1(const Ctx& ctx, const model::Pack<Interval>& pack,
                     const std::vector<ExactCMat>& A, double a_finite_norm,
                     int threads, std::ostream* log);

Z2Breakdown bound_Z2(const Ctx& ctx, const model::State<Interval>& x, double a_norm,
                     double r);

struct ProveOptions {
  double nu = 1.1;   // sequence-space weight, must be > 1
  double r = 1e-6;   // candidate contraction radius
  int threads = 1;   // column-block workers for the finite Z1 product
  std::ostream* log = nullptr;  // progress stream, may be null
};

struct Certificate {
  bool ok = false;
  int K = 0, N = 0;
  double omega_lo = 0.0, omega_hi = 1.0;
  double nu = 0.0;
  double r = 0.0;
  double a_finite_norm = 0.0;  // || A_K ||
  double a_norm = 0.0;         // || A || = max(|| A_K ||, 1/(K+1))
  YBreakdown Y;
  Z1Breakdown Z1;
  Z2Breakdown Z2;
  double kappa = 0.0;        // Z1 + Z2 r, the contraction rate on the ball
  double radii_value = 0.0;  // Y + Z1 r + Z2 r^2 / 2, must be <= r
  double seconds = 0.0;
  std::string message;
};

// Rigorous a-posteriori certification: given a numerical branch on its sweep
// domain and a finite approximate inverse of its derivative, bounds the Newton
// like operator x - A F(x) on the closed ball of radius r around the branch
// and checks that it is a contraction mapping the ball into itself.  All
// estimates are directed-rounding/interval safe; ok is set only when the
// contraction inequalities hold with every quantity finite.
Certificate prove(const model::State<double>& branch, const solver::ApproxInverse& A,
                  const ProveOptions& opt = {});

}  // namespace choreo::prover
