#pragma once

#include <vector>

#include "choreo/model/feval.hpp"
#include "choreo/series/layout.hpp"

namespace choreo::model {

using series::Layout;

// 1 - exp(i 4 pi j m / 3): the Fourier symbol of I - S^j.  Exactly zero when
// 3 | j*m, and (3/2, +-sqrt(3)/2) otherwise (modulus sqrt(3)).
template <class R>
Cplx<R> shift_deficit(long long m, int j) {
  const long long q = ((m * j) % 3 + 3) % 3;
  if constexpr (std::is_same_v<R, Interval>) {
    if (q == 0) return {Interval(0.0), Interval(0.0)};
    const rigor::CInterval ph = rigor::exp_phase(m * j);
    return {Interval(1.0) - ph.re, -ph.im};
  } else {
    if (q == 0) return {0.0, 0.0};
    const double s = 0.5 * std::sqrt(3.0);
    return q == 1 ? Cplx<double>{1.5, s} : Cplx<double>{1.5, -s};
  }
}

// Two-sided matrix entry of DF(x) between Fourier positions (row k of the
// equation component rc, column m of the unknown component cc).  The entry is
// an element of the Chebyshev algebra (it acts on the column's Chebyshev
// scalar by multiplication); an empty series means a structural zero.
//
// Equation slots follow the layout order: a<-eta1, beta<-eta2, alpha<-gamma,
// u_j<-g_j, v_j<-f_j, w<-h.
template <class R>
ChebSeries<R> df_entry_two_sided(const Pack<R>& p, int rc, long long k, int cc,
                                 long long m) {
  using namespace series;
  ChebSeries<R> e;
  auto add = [&e](const ChebSeries<R>& t) {
    if (e.empty()) e = t;
    else e += t;
  };
  const Cplx<R> one{real_from<R>(1.0), real_from<R>(0.0)};
  const auto ik = [](long long kk) {
    return ChebSeries<R>::constant(
        Cplx<R>{real_from<R>(0.0), real_from<R>(double(kk))});
  };

  switch (rc) {
    case CompA:  // eta1: evaluation of u3 at t = 0
      if (cc == CompU3) add(ChebSeries<R>::constant(one));
      break;
    case CompBeta:  // eta2: mean of u1
      if (cc == CompU1 && m == 0) add(ChebSeries<R>::constant(one));
      break;
    case CompAlpha:  // gamma row
      if (cc == CompA) add(p.e_gam_a);
      if (cc >= CompU1 && cc <= CompU3)
        add(shift_deficit<R>(m, 1) * p.e_gam_u[size_t(cc - CompU1)]);
      if (cc == CompW) add(p.e_gam_w);
      break;
    case CompU1:
    case CompU2:
    case CompU3: {  // g_j row
      const int j = rc - CompU1;
      if (cc == CompBeta && j == 0 && k == 0) add(ChebSeries<R>::constant(one));
      if (cc == CompU1 + j) {
        if (k == m && j < 2) add(-p.om2);
        const int dk = int(k - m);
        add(shift_deficit<R>(m, 1) * p.w3.coeff(dk));
        add(shift_deficit<R>(m, 2) * p.Rw3.coeff(dk));
      }
      if (cc == CompV1 + j && k == m) add(ik(k));
      if (j == 0 && cc == CompV2 && k == m) add(scale_real(p.om, 2.0));
      if (j == 1 && cc == CompV1 && k == m) add(scale_real(p.om, -2.0));
      if (cc == CompW) {
        add(p.m_g_w[size_t(j)].coeff(int(k - m)));
        add(p.hg_w[size_t(j)].coeff(int(k + m)));
      }
      break;
    }
    case CompV1:
    case CompV2:
    case CompV3: {  // f_j row
      const int j = rc - CompV1;
      if (cc == CompU1 + j && k == m) add(ik(k));
      if (cc == CompV1 + j && k == m)
        add(ChebSeries<R>::constant(Cplx<R>{real_from<R>(-1.0), real_from<R>(0.0)}));
      break;
    }
    case CompW:  // h row
      if (cc == CompA) add(p.m_h_a.coeff(int(k)));
      if (cc == CompAlpha && k == 0) add(ChebSeries<R>::constant(one));
      if (cc >= CompU1 && cc <= CompU3)
        add(shift_deficit<R>(m, 1) * p.m_h_u[size_t(cc - CompU1)].coeff(int(k - m)));
      if (cc >= CompV1 && cc <= CompV3)
        add(shift_deficit<R>(m, 1) * p.m_h_v[size_t(cc - CompV1)].coeff(int(k - m)));
      if (cc == CompW) {
        if (k == m) add(ik(k));
        add(p.m_h_w.coeff(int(k - m)));
      }
      break;
    default:
      throw invariant_error("df_entry_two_sided: bad component");
  }
  return e;
}

// Representative-coordinate entry: the column coordinate of a cos/sin class
// controls both two-sided modes +-k' (with the class reflection sign), so the
// folded entry is two_sided(k, k') + sigma * two_sided(k, -k').
template <class R>
ChebSeries<R> df_entry(const Pack<R>& p, const Layout& rows, const Layout& cols,
                       int re, int ce) {
  const auto rE = rows.entries[size_t(re)];
  const auto cE = cols.entries[size_t(ce)];
  const Parity cp = series::kCompParity[size_t(cE.comp)];
  ChebSeries<R> e = df_entry_two_sided(p, rE.comp, rE.k, cE.comp, cE.k);
  if (series::has_reflection(cp) && cE.k > 0) {
    const ChebSeries<R> mirror =
        df_entry_two_sided(p, rE.comp, rE.k, cE.comp, -cE.k);
    if (!mirror.empty())
      e = series::reflection_sign(cp) > 0 ? (e.empty() ? mirror : e + mirror)
                                          : (e.empty() ? -mirror : e - mirror);
  }
  return e;
}

// Dense assembly, row-major rows.size() x cols.size().
template <class R>
std::vector<ChebSeries<R>> assemble_dense(const Pack<R>& p, const Layout& rows,
                                          const Layout& cols) {
  std::vector<ChebSeries<R>> M(size_t(rows.size()) * size_t(cols.size()));
  for (int re = 0; re < rows.size(); ++re)
    for (int ce = 0; ce < cols.size(); ++ce)
      M[size_t(re) * size_t(cols.size()) + size_t(ce)] = df_entry(p, rows, cols, re, ce);
  return M;
}

// Matrix-vector product with Chebyshev-valued entries.
template <class R>
std::vector<ChebSeries<R>> apply_dense(const std::vector<ChebSeries<R>>& M,
                                       const Layout& rows, const Layout& cols,
                                       const std::vector<ChebSeries<R>>& x) {
  require_invariant(int(x.size()) == cols.size() &&
                        M.size() == size_t(rows.size()) * size_t(cols.size()),
                    "apply_dense: shape mismatch");
  std::vector<ChebSeries<R>> y(size_t(rows.size()));
  for (int re = 0; re < rows.size(); ++re) {
    ChebSeries<R> acc;
    for (int ce = 0; ce < cols.size(); ++ce) {
      const ChebSeries<R>& ent = M[size_t(re) * size_t(cols.size()) + size_t(ce)];
      if (ent.empty() || x[size_t(ce)].empty()) continue;
      if (acc.empty()) acc = ent * x[size_t(ce)];
      else acc += ent * x[size_t(ce)];
    }
    y[size_t(re)] = acc.empty() ? ChebSeries<R>(0) : acc;
  }
  return y;
}

// Representative coordinates of a state / residual over a layout: the (comp, k)
// coefficient as a Chebyshev series per slot.
template <class R, class V>
std::vector<ChebSeries<R>> repr_coords(const V& x, const Layout& L) {
  std::vector<ChebSeries<R>> r(size_t(L.size()));
  for (int e = 0; e < L.size(); ++e) {
    const auto& ent = L.entries[size_t(e)];
    if (series::kCompParity[size_t(ent.comp)] == Parity::Scalar)
      r[size_t(e)] = comp_scalar(x, ent.comp);
    else
      r[size_t(e)] = comp_series(x, ent.comp).coeff(ent.k);
  }
  return r;
}

}  // namespace choreo::model
