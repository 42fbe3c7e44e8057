#pragma once

#include <Eigen/Dense>

#include "choreo/model/feval.hpp"
#include "choreo/model/state.hpp"
#include "choreo/series/layout.hpp"

namespace choreo::solver {

struct NewtonOptions {
  double tol = 1e-12;  // sup-norm of the residual amplitudes at convergence
  int max_iter = 25;
  // Planar frame used at frequency zero: beta, u1, v1 are frozen at zero and
  // the paired equations (eta2, g1, f1) are dropped.  The remaining system is
  // regular there, while the full one has the dropped triple as a kernel.
  bool reduced = false;
};

struct NewtonReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // final sup-norm over the active amplitudes
};

// Real-amplitude coordinates of a single-frequency slice (N = 0 frame).
Eigen::VectorXd coords_from_state(const series::RealLayout& rl,
                                  const model::State<double>& x);
Eigen::VectorXd coords_from_residual(const series::RealLayout& rl,
                                     const model::Residual<double>& r);
model::State<double> state_from_coords(const series::RealLayout& rl,
                                       const model::Domain& dom,
                                       const Eigen::VectorXd& v);

// Unit basis direction for one layout entry.
model::State<double> basis_state(const series::RealLayout& rl,
                                 const model::Domain& dom, int e);

// Jacobian assembled column by column as directional derivatives, so it is
// consistent with eval_F by construction.
Eigen::MatrixXd jacobian(const model::State<double>& x,
                         const series::RealLayout& rl);

// Damped-free Newton iteration on a point slice; x is refined in place.
NewtonReport newton_refine(model::State<double>& x, const NewtonOptions& opt);

}  // namespace choreo::solver
