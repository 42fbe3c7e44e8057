#pragma once

#include <cmath>
#include <vector>

#include "choreo/common.hpp"

namespace choreo::solver {

// Chebyshev-Gauss-Lobatto grid s_j = cos(j pi / N), j = 0..N, descending from
// +1 to -1.  Endpoints (and the midpoint for even N) are snapped exactly, and
// the grid is exactly antisymmetric: s_{N-j} = -s_j.
inline std::vector<double> cgl_nodes(int N) {
  require_input(N >= 0, "cgl_nodes: N must be >= 0");
  std::vector<double> s(size_t(N) + 1);
  if (N == 0) {
    s[0] = 1.0;
    return s;
  }
  const double pi = 3.14159265358979323846;
  for (int j = 0; j <= N / 2; ++j) {
    s[size_t(j)] = std::cos(pi * j / N);
    s[size_t(N - j)] = -s[size_t(j)];
  }
  s[0] = 1.0;
  s[size_t(N)] = -1.0;
  if (N % 2 == 0) s[size_t(N / 2)] = 0.0;
  return s;
}

// Interpolation coefficients from samples on the CGL grid: returns c with
//   f(s) = sum_{n=0}^{N} c_n T_n(s)   exactly for polynomials of degree <= N,
// via the discrete cosine quadrature
//   c_n = (2/N) [ f_0/2 + sum_{j=1}^{N-1} f_j cos(n j pi / N) + (-1)^n f_N/2 ],
// with c_0 and c_N halved once more.
inline std::vector<double> cheb_transform(const std::vector<double>& f) {
  const int N = int(f.size()) - 1;
  require_input(N >= 0, "cheb_transform: empty sample vector");
  if (N == 0) return f;
  const double pi = 3.14159265358979323846;
  std::vector<double> c(size_t(N) + 1);
  for (int n = 0; n <= N; ++n) {
    double acc = 0.5 * (f[0] + (n % 2 ? -f[size_t(N)] : f[size_t(N)]));
    for (int j = 1; j < N; ++j) acc += f[size_t(j)] * std::cos(pi * n * j / N);
    c[size_t(n)] = 2.0 * acc / N;
  }
  c[0] *= 0.5;
  c[size_t(N)] *= 0.5;
  return c;
}

}  // namespace choreo::solver
