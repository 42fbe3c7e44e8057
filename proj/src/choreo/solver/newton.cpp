#include "choreo/solver/newton.hpp"

#include <cmath>
#include <vector>

#include "choreo/common.hpp"

namespace choreo::solver {

using model::Domain;
using model::Residual;
using model::State;
using series::Cplx;
using series::RealLayout;

namespace {

// Indices that take part in the solve; drops the planar-frame triple when
// reduced (both the unknowns and, by the shared component order, the rows).
std::vector<int> active_indices(const RealLayout& rl, bool reduced) {
  std::vector<int> act;
  act.reserve(size_t(rl.size()));
  for (int e = 0; e < rl.size(); ++e) {
    const int comp = rl.entries[size_t(e)].comp;
    const bool dropped = reduced && (comp == series::CompBeta ||
                                     comp == series::CompU1 ||
                                     comp == series::CompV1);
    if (!dropped) act.push_back(e);
  }
  return act;
}

}  // namespace

Eigen::VectorXd coords_from_state(const RealLayout& rl, const State<double>& x) {
  std::vector<double> v(size_t(rl.size()), 0.0);
  for (int comp = 0; comp < series::kNumComps; ++comp) {
    if (comp <= series::CompAlpha)
      v[size_t(rl.first_index[size_t(comp)])] = model::comp_scalar(x, comp).c[0].re;
    else
      series::amplitudes_from_component(rl, comp, model::comp_series(x, comp), v);
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), long(v.size()));
}

Eigen::VectorXd coords_from_residual(const RealLayout& rl, const Residual<double>& r) {
  std::vector<double> v(size_t(rl.size()), 0.0);
  for (int comp = 0; comp < series::kNumComps; ++comp) {
    if (comp <= series::CompAlpha)
      v[size_t(rl.first_index[size_t(comp)])] = model::comp_scalar(r, comp).c[0].re;
    else
      series::amplitudes_from_component(rl, comp, model::comp_series(r, comp), v);
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), long(v.size()));
}

State<double> state_from_coords(const RealLayout& rl, const Domain& dom,
                                const Eigen::VectorXd& v) {
  require_input(dom.N == 0, "state_from_coords: expected a point frame");
  require_input(int(v.size()) == rl.size() && rl.K == dom.K,
                "state_from_coords: layout/frame mismatch");
  std::vector<double> buf(v.data(), v.data() + v.size());
  State<double> x = State<double>::zeros(dom);
  for (int comp = 0; comp < series::kNumComps; ++comp) {
    if (comp <= series::CompAlpha)
      model::comp_scalar(x, comp).c[0].re = buf[size_t(rl.first_index[size_t(comp)])];
    else
      model::comp_series(x, comp) =
          series::component_from_amplitudes(rl, comp, buf, dom.K);
  }
  return x;
}

State<double> basis_state(const RealLayout& rl, const Domain& dom, int e) {
  State<double> d = State<double>::zeros(dom);
  const auto& en = rl.entries[size_t(e)];
  if (en.comp <= series::CompAlpha) {
    model::comp_scalar(d, en.comp).c[0].re = 1.0;
    return d;
  }
  auto& phi = model::comp_series(d, en.comp);
  if (en.k == 0) {
    phi.at(0, 0).re = 1.0;
  } else if (!en.is_sin) {
    phi.at(en.k, 0).re = 0.5;
    phi.at(-en.k, 0).re = 0.5;
  } else {
    phi.at(en.k, 0).im = -0.5;
    phi.at(-en.k, 0).im = 0.5;
  }
  return d;
}

Eigen::MatrixXd jacobian(const State<double>& x, const RealLayout& rl) {
  const model::Pack<double> p = model::make_pack(x);
  const int n = rl.size();
  Eigen::MatrixXd J(n, n);
  for (int e = 0; e < n; ++e) {
    const State<double> d = basis_state(rl, x.dom, e);
    J.col(e) = coords_from_residual(rl, model::apply_DF(x, p, d));
  }
  return J;
}

NewtonReport newton_refine(State<double>& x, const NewtonOptions& opt) {
  require_input(x.dom.is_point() && x.dom.N == 0,
                "newton_refine: expected a point frame");
  require_input(!opt.reduced || x.dom.omega_lo == 0.0,
                "newton_refine: the reduced system applies at frequency 0 only");

  const RealLayout rl = series::make_real_layout(x.dom.K);
  const std::vector<int> act = active_indices(rl, opt.reduced);
  const int na = int(act.size());
  std::vector<char> active(size_t(rl.size()), 0);
  for (int e : act) active[size_t(e)] = 1;

  Eigen::VectorXd xc = coords_from_state(rl, x);
  if (opt.reduced) {
    for (int e = 0; e < rl.size(); ++e)
      if (!active[size_t(e)]) xc[e] = 0.0;
    x = state_from_coords(rl, x.dom, xc);
  }

  NewtonReport rep;
  for (int it = 0; it <= opt.max_iter; ++it) {
    const Eigen::VectorXd F = coords_from_residual(rl, model::eval_F(x));
    double err = 0.0;
    for (int i = 0; i < na; ++i) err = std::fmax(err, std::fabs(F[act[size_t(i)]]));
    rep.residual = err;
    rep.iterations = it;
    if (!std::isfinite(err) || err > 1e8) return rep;  // diverged
    if (err < opt.tol) {
      rep.converged = true;
      return rep;
    }
    if (it == opt.max_iter) break;

    const Eigen::MatrixXd J = jacobian(x, rl);
    Eigen::MatrixXd Ja(na, na);
    Eigen::VectorXd Fa(na);
    for (int i = 0; i < na; ++i) {
      Fa[i] = F[act[size_t(i)]];
      for (int j = 0; j < na; ++j) Ja(i, j) = J(act[size_t(i)], act[size_t(j)]);
    }
    const Eigen::VectorXd delta = Ja.partialPivLu().solve(Fa);
    for (int i = 0; i < na; ++i) xc[act[size_t(i)]] -= delta[i];
    x = state_from_coords(rl, x.dom, xc);
  }
  return rep;
}

}  // namespace choreo::solver
