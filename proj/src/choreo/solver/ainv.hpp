#pragma once

#include <Eigen/Dense>
#include <vector>

#include "choreo/model/state.hpp"
#include "choreo/series/layout.hpp"

namespace choreo::solver {

// Frequency-dependent approximate inverse of the truncated derivative, in the
// representative-complex layout:  A(s) = sum_{n=0}^{N} order[n] T_n(s).
// Built by inverting the derivative slice at each grid node and interpolating
// entrywise; the derivative maps the (totally real) symmetry-class subspace to
// itself, so its complex inverse does as well.
struct ApproxInverse {
  int K = 0;
  int N = 0;
  std::vector<Eigen::MatrixXcd> order;

  Eigen::MatrixXcd eval(double s) const;
};

ApproxInverse build_approx_inverse(const model::State<double>& branch);

}  // namespace choreo::solver
