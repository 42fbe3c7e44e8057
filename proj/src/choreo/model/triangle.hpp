#pragma once

#include "choreo/model/state.hpp"

namespace choreo::model {

// The equilateral relative equilibrium at frequency Omega = 1, as a fixed-
// frequency slice on modes |k| <= K (K >= 2):
//   u = (3^{-1/6} cos 2t, 3^{-1/6} sin 2t, cos t),  v = du/dt,  w = 3^{-1/3},
//   a = beta = alpha = 0.
// It solves the full system exactly, and is the pinned starting slice of the
// continuation.  The Interval variant encloses the exact algebraic data; the
// double variant is its midpoint (and the values stored in branch files).
State<Interval> triangle_slice_interval(int K);
State<double> triangle_slice(int K);

}  // namespace choreo::model
