#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "choreo/rigor/rounding.hpp"

namespace choreo::prover {

// One Chebyshev order of a complex matrix enclosure: entry (i,j) lies in the
// disk centered at re + i*im with radius rad >= 0.
struct OrderMat {
  Eigen::MatrixXd re, im, rad;
  bool zero = true;  // true while all entries are exactly zero

  void init(long rows, long cols) {
    re = Eigen::MatrixXd::Zero(rows, cols);
    im = Eigen::MatrixXd::Zero(rows, cols);
    rad = Eigen::MatrixXd::Zero(rows, cols);
    zero = true;
  }
};

// Exact (radius-free) complex matrix split into parts, with an upper bound of
// the entrywise modulus precomputed for radius propagation.
struct ExactCMat {
  Eigen::MatrixXd re, im, abs_up;
};

inline ExactCMat split_exact(const Eigen::MatrixXcd& M) {
  ExactCMat s;
  s.re = M.real();
  s.im = M.imag();
  rigor::set_round_upward();
  s.abs_up = s.re.cwiseAbs() + s.im.cwiseAbs();
  return s;
}

// Range accumulator for sums of products: real and imaginary parts tracked as
// [lo, hi] matrices per Chebyshev order, with input radii accumulated apart.
// Rigor comes from monotonicity of directed rounding: a float expression built
// from +, -, * evaluated entirely under FE_UPWARD is >= its exact value, and
// under FE_DOWNWARD is <= it, for any evaluation order the dense kernels pick.
// Every pass writing *_lo therefore runs under FE_DOWNWARD and every pass
// writing *_hi or rad under FE_UPWARD.  Callers must restore FE_UPWARD for any
// Interval arithmetic that follows (the accumulators leave FE_UPWARD installed).
struct RangeAccum {
  std::vector<Eigen::MatrixXd> re_lo, re_hi, im_lo, im_hi, rad;

  void init(int orders, long rows, long cols) {
    re_lo.assign(size_t(orders), Eigen::MatrixXd::Zero(rows, cols));
    re_hi = re_lo;
    im_lo = re_lo;
    im_hi = re_lo;
    rad = re_lo;
  }
  int orders() const { return int(re_lo.size()); }

  // Accumulates the Chebyshev product rule T_n T_m = (T_{n+m} + T_{|n-m|}) / 2:
  // adds (A * B) / 2 into both targets (t1 == t2 is fine and doubles up, which
  // is exactly the n == m or n == 0 case).  A is an exact point matrix; the
  // nine dense products are computed once and shared between the two targets.
  void add_product_cheb(int t1, int t2, const ExactCMat& A, const OrderMat& B) {
    if (B.zero) return;
    const size_t a = size_t(t1), b = size_t(t2);
    rigor::set_round_upward();
    const Eigen::MatrixXd rr_u = A.re * B.re;
    const Eigen::MatrixXd ii_u = A.im * B.im;
    const Eigen::MatrixXd ri_u = A.re * B.im;
    const Eigen::MatrixXd ir_u = A.im * B.re;
    const Eigen::MatrixXd rad_u = 0.5 * (A.abs_up * B.rad);
    rigor::set_round_downward();
    const Eigen::MatrixXd rr_d = A.re * B.re;
    const Eigen::MatrixXd ii_d = A.im * B.im;
    const Eigen::MatrixXd ri_d = A.re * B.im;
    const Eigen::MatrixXd ir_d = A.im * B.re;
    // Re(AB) in [rr_d - ii_u, rr_u - ii_d]; Im(AB) in [ri_d + ir_d, ri_u + ir_u];
    // the 0.5 split is exact, the directed sums keep the bounds one-sided.
    const Eigen::MatrixXd re_lo_p = 0.5 * (rr_d - ii_u);
    const Eigen::MatrixXd im_lo_p = 0.5 * (ri_d + ir_d);
    re_lo[a] += re_lo_p;
    im_lo[a] += im_lo_p;
    re_lo[b] += re_lo_p;
    im_lo[b] += im_lo_p;
    rigor::set_round_upward();
    const Eigen::MatrixXd re_hi_p = 0.5 * (rr_u - ii_d);
    const Eigen::MatrixXd im_hi_p = 0.5 * (ri_u + ir_u);
    re_hi[a] += re_hi_p;
    im_hi[a] += im_hi_p;
    rad[a] += rad_u;
    re_hi[b] += re_hi_p;
    im_hi[b] += im_hi_p;
    rad[b] += rad_u;
  }

  // Directed subtraction of the exact unit at one (row, col, order 0) entry.
  void subtract_one(long row, long col) {
    rigor::set_round_downward();
    re_lo[0](row, col) -= 1.0;
    rigor::set_round_upward();
    re_hi[0](row, col) -= 1.0;
  }

  // Upper bound of the entry modulus at (row, col, order n), FE_UPWARD assumed.
  double abs_up(int n, long row, long col) const {
    const size_t t = size_t(n);
    const double r = std::fmax(std::fabs(re_lo[t](row, col)), std::fabs(re_hi[t](row, col)));
    const double i = std::fmax(std::fabs(im_lo[t](row, col)), std::fabs(im_hi[t](row, col)));
    return r + i + rad[t](row, col);
  }
};

}  // namespace choreo::prover
