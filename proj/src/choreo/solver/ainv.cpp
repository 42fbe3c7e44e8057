#include "choreo/solver/ainv.hpp"

#include <cmath>

#include "choreo/common.hpp"
#include "choreo/model/dfassemble.hpp"
#include "choreo/solver/chebnodes.hpp"
#include "choreo/solver/continuation.hpp"

namespace choreo::solver {

Eigen::MatrixXcd ApproxInverse::eval(double s) const {
  require_input(!order.empty(), "ApproxInverse: empty");
  Eigen::MatrixXcd acc = order[0];
  double tm1 = 1.0, t = s;
  for (int n = 1; n <= N; ++n) {
    acc += t * order[size_t(n)];
    const double tp1 = 2.0 * s * t - tm1;
    tm1 = t;
    t = tp1;
  }
  return acc;
}

ApproxInverse build_approx_inverse(const model::State<double>& branch) {
  const model::Domain& dom = branch.dom;
  const series::Layout L = series::make_layout(dom.K);
  const int n = L.size();
  const int N = dom.N;

  ApproxInverse A;
  A.K = dom.K;
  A.N = N;
  A.order.assign(size_t(N) + 1, Eigen::MatrixXcd::Zero(n, n));

  const std::vector<double> grid = cgl_nodes(N);
  std::vector<Eigen::MatrixXcd> inv(size_t(N) + 1);
  for (int j = 0; j <= N; ++j) {
    const model::State<double> slice = slice_state(branch, grid[size_t(j)]);
    const model::Pack<double> p = model::make_pack(slice);
    const auto dense = model::assemble_dense(p, L, L);
    Eigen::MatrixXcd M(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const auto& e = dense[size_t(r) * size_t(n) + size_t(c)];
        M(r, c) = e.empty() ? std::complex<double>{}
                            : std::complex<double>{e.c[0].re, e.c[0].im};
      }
    inv[size_t(j)] = M.partialPivLu().inverse();
  }

  if (N == 0) {
    A.order[0] = inv[0];
    return A;
  }
  const double pi = 3.14159265358979323846;
  for (int nn = 0; nn <= N; ++nn) {
    Eigen::MatrixXcd acc = 0.5 * (inv[0] + (nn % 2 ? -inv[size_t(N)] : inv[size_t(N)]));
    for (int j = 1; j < N; ++j) acc += std::cos(pi * nn * j / N) * inv[size_t(j)];
    A.order[size_t(nn)] = (2.0 / N) * acc;
  }
  A.order[0] *= 0.5;
  A.order[size_t(N)] *= 0.5;
  return A;
}

}  // namespace choreo::solver
