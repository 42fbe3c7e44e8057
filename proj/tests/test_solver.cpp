#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "choreo/model/dfassemble.hpp"
#include "choreo/model/triangle.hpp"
#include "choreo/solver/ainv.hpp"
#include "choreo/solver/chebnodes.hpp"
#include "choreo/solver/continuation.hpp"
#include "choreo/solver/newton.hpp"
#include "test_support.hpp"

using namespace choreo;
using model::Domain;
using model::Rational;
using model::State;
using series::Cplx;

TEST_CASE("Gauss-Lobatto grid and interpolation transform") {
  const auto s = solver::cgl_nodes(8);
  CHECK(s[0] == 1.0);
  CHECK(s[8] == -1.0);
  CHECK(s[4] == 0.0);
  for (int j = 0; j <= 8; ++j) CHECK(s[size_t(j)] == -s[size_t(8 - j)]);

  // Recover the coefficients of p(s) = 1 + 0.5 T_3(s) - 0.25 T_7(s) from its
  // values on the degree-10 grid (the transform is exact through degree N).
  auto T = [](int n, double x) { return std::cos(n * std::acos(std::fmin(1.0, std::fmax(-1.0, x)))); };
  const auto grid = solver::cgl_nodes(10);
  std::vector<double> f(11);
  for (int j = 0; j <= 10; ++j)
    f[size_t(j)] = 1.0 + 0.5 * T(3, grid[size_t(j)]) - 0.25 * T(7, grid[size_t(j)]);
  const auto c = solver::cheb_transform(f);
  for (int n = 0; n <= 10; ++n) {
    const double want = n == 0 ? 1.0 : n == 3 ? 0.5 : n == 7 ? -0.25 : 0.0;
    CHECK(c[size_t(n)] == doctest::Approx(want).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("coordinate round trip and Jacobian linearity") {
  const Domain pt{12, 0, 0.8, 0.8, Rational{}};
  const auto rl = series::make_real_layout(pt.K);
  const State<double> x = testing::random_state(pt, 21, 0.4);

  const Eigen::VectorXd xc = solver::coords_from_state(rl, x);
  const State<double> back = solver::state_from_coords(rl, pt, xc);
  const Eigen::VectorXd xc2 = solver::coords_from_state(rl, back);
  CHECK((xc - xc2).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXd J = solver::jacobian(x, rl);
  const State<double> d = testing::random_state(pt, 77, 1.0);
  const model::Pack<double> p = model::make_pack(x);
  const Eigen::VectorXd lhs = J * solver::coords_from_state(rl, d);
  const Eigen::VectorXd rhs =
      solver::coords_from_residual(rl, model::apply_DF(x, p, d));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
}

// The triangle is an isolated zero at frequency 1, so the iteration must pull
// a small perturbation back onto it, not merely onto some nearby zero.
TEST_CASE("Newton contracts a perturbed triangle back to the exact one") {
  const State<double> tri = model::triangle_slice(20);
  const auto rl = series::make_real_layout(20);
  const Eigen::VectorXd exact = solver::coords_from_state(rl, tri);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd pert = exact;
  for (int i = 0; i < pert.size(); ++i) pert[i] += 1e-4 * uni(rng);

  State<double> x = solver::state_from_coords(rl, tri.dom, pert);
  const solver::NewtonReport rep = solver::newton_refine(x, {});
  CHECK(rep.converged);
  CHECK(rep.iterations <= 8);
  CHECK(rep.residual < 1e-12);
  const Eigen::VectorXd got = solver::coords_from_state(rl, x);
  CHECK((got - exact).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("continuation over the upper frequency range") {
  solver::ContinuationOptions opt;
  opt.dom = Domain{16, 8, 0.7, 1.0, Rational{}};
  const solver::BranchResult res = solver::continue_branch(opt);
  REQUIRE_MESSAGE(res.ok, res.message);
  REQUIRE(int(res.nodes.size()) == opt.dom.N + 1);

  for (const auto& ni : res.info) CHECK(ni.residual < 1e-12);

  // Slicing the interpolated branch at a grid node reproduces that node.
  const auto rl = series::make_real_layout(opt.dom.K);
  const auto grid = solver::cgl_nodes(opt.dom.N);
  for (int j = 0; j <= opt.dom.N; ++j) {
    const State<double> sl = solver::slice_state(res.branch, grid[size_t(j)]);
    const Eigen::VectorXd a = solver::coords_from_state(rl, sl);
    const Eigen::VectorXd b = solver::coords_from_state(rl, res.nodes[size_t(j)]);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
  }

  // The endpoint pin makes the plain coefficient sums match the triangle datum.
  const State<double> tri = model::triangle_slice(opt.dom.K);
  double worst = 0.0;
  for (int comp = series::CompU1; comp <= series::CompW; ++comp) {
    const auto& phi = model::comp_series(res.branch, comp);
    const auto& tph = model::comp_series(tri, comp);
    for (int k = -opt.dom.K; k <= opt.dom.K; ++k) {
      const Cplx<double> diff = series::eval_at_one(phi.coeff(k)) - tph.get(k, 0);
      worst = std::fmax(worst, series::nrm_abs(diff));
    }
  }
  CHECK(worst < 5e-15);

  // The family is nontrivial: the inverse side length moves with frequency.
  const State<double> low = solver::slice_state(res.branch, -1.0);
  CHECK(std::fabs(low.w.at(0, 0).re - tri.w.at(0, 0).re) > 1e-3);

  // Off the grid the branch still nearly solves the system (interpolation
  // error of an analytic family on a short parameter interval).
  const State<double> mid = solver::slice_state(res.branch, 0.33);
  const Eigen::VectorXd fr =
      solver::coords_from_residual(rl, model::eval_F(mid));
  CHECK(fr.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("continuation reaches frequency zero through the planar frame") {
  solver::ContinuationOptions opt;
  opt.dom = Domain{24, 12, 0.0, 1.0, Rational{}};
  const solver::BranchResult res = solver::continue_branch(opt);
  REQUIRE_MESSAGE(res.ok, res.message);

  const State<double>& last = res.nodes.back();
  CHECK(res.info.back().omega == 0.0);
  CHECK(series::nu_norm(last.u[0], series::nu_power_table(1.0, opt.dom.K + 1)) == 0.0);
  CHECK(series::nu_norm(last.v[0], series::nu_power_table(1.0, opt.dom.K + 1)) == 0.0);
  CHECK(last.beta.c[0].re == 0.0);

  // Nontrivial planar loop: the second in-plane component carries real mass,
  // and the vertical normalization u3(0) = 1 holds.
  const auto pw = series::nu_power_table(1.0, opt.dom.K + 1);
  CHECK(series::nu_norm(last.u[1], pw) > 0.05);
  CHECK(series::eval_time_zero(last.u[2]).c[0].re == doctest::Approx(1.0).epsilon(1e-12));

  // Pinned planar components vanish identically at s = -1.
  double worst = 0.0;
  for (int k = -opt.dom.K; k <= opt.dom.K; ++k) {
    worst = std::fmax(worst, series::nrm_abs(series::eval_at_minus_one(res.branch.u[0].coeff(k))));
    worst = std::fmax(worst, series::nrm_abs(series::eval_at_minus_one(res.branch.v[0].coeff(k))));
  }
  worst = std::fmax(worst, series::nrm_abs(series::eval_at_minus_one(res.branch.beta)));
  CHECK(worst < 5e-15);
}

TEST_CASE("approximate inverse undoes the derivative slice at the nodes") {
  solver::ContinuationOptions opt;
  opt.dom = Domain{16, 8, 0.7, 1.0, Rational{}};
  const solver::BranchResult res = solver::continue_branch(opt);
  REQUIRE_MESSAGE(res.ok, res.message);

  const solver::ApproxInverse A = solver::build_approx_inverse(res.branch);
  const series::Layout L = series::make_layout(opt.dom.K);
  const int n = L.size();
  const auto grid = solver::cgl_nodes(opt.dom.N);

  auto derivative_matrix = [&](double s) {
    const State<double> sl = solver::slice_state(res.branch, s);
    const model::Pack<double> p = model::make_pack(sl);
    const auto dense = model::assemble_dense(p, L, L);
    Eigen::MatrixXcd M(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const auto& e = dense[size_t(r) * size_t(n) + size_t(c)];
        M(r, c) = e.empty() ? std::complex<double>{}
                            : std::complex<double>{e.c[0].re, e.c[0].im};
      }
    return M;
  };

  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  for (int j = 0; j <= opt.dom.N; ++j) {
    const double defect =
        (A.eval(grid[size_t(j)]) * derivative_matrix(grid[size_t(j)]) - I)
            .cwiseAbs()
            .maxCoeff();
    CHECK(defect < 1e-9);
  }
  // Between nodes the interpolant is still a good inverse.
  const double mid_defect =
      (A.eval(0.41) * derivative_matrix(0.41) - I).cwiseAbs().maxCoeff();
  CHECK(mid_defect < 1e-3);
}
