#pragma once

#include "choreo/rigor/interval.hpp"

namespace choreo::rigor {

// Closed-form enclosure of   sum_{k in Z} |k|^m q^{|k|}   for 0 < q < 1,
// m in {0,1,2,3}:
//   m=0: (1+q)/(1-q)
//   m=1: 2 q/(1-q)^2
//   m=2: 2 q(1+q)/(1-q)^3
//   m=3: 2 q(1+4q+q^2)/(1-q)^4
// Used to bound |d^m/dt^m delta(t)| for a Fourier perturbation delta with
// |delta_k| <= B * q^{|k|}: the derivative bound is B * this sum.
Interval fourier_tail_weight_sum(int m, const Interval& q);

}  // namespace choreo::rigor
