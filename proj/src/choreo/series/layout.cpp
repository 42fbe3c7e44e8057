#include "choreo/series/layout.hpp"

#include "choreo/common.hpp"

namespace choreo::series {

int Layout::index_of(int comp, int k) const {
  const Parity p = kCompParity[size_t(comp)];
  if (!mode_allowed(p, k)) return -1;
  if (p == Parity::Scalar) return k == 0 ? first_index[size_t(comp)] : -1;
  if (p == Parity::EvenGeneral) {
    if (std::abs(k) > K) return -1;
    // two-sided even modes -K..K ascending: position (k + K) / 2
    return first_index[size_t(comp)] + (k + K - (K % 2 ? 1 : 0)) / 2;
  }
  if (k < 0 || k > K) return -1;
  // representatives ascending within the parity: k = p0, p0+2, ...
  // (sin-type classes have no k = 0 mode: c_0 = -c_0 forces it to vanish)
  const int p0 = (p == Parity::OddCos || p == Parity::OddSin) ? 1
                 : (p == Parity::EvenSin)                     ? 2
                                                              : 0;
  if (k < p0) return -1;
  return first_index[size_t(comp)] + (k - p0) / 2;
}

double Layout::multiplicity(int e) const {
  const Entry& en = entries[size_t(e)];
  const Parity p = kCompParity[size_t(en.comp)];
  if (has_reflection(p)) return en.k == 0 ? 1.0 : 2.0;
  return 1.0;
}

Layout make_layout(int K) {
  require_input(K >= 1, "layout: K must be >= 1");
  Layout ly;
  ly.K = K;
  for (int comp = 0; comp < kNumComps; ++comp) {
    ly.first_index[size_t(comp)] = ly.size();
    const Parity p = kCompParity[size_t(comp)];
    switch (p) {
      case Parity::Scalar:
        ly.entries.push_back({comp, 0});
        break;
      case Parity::EvenGeneral: {
        const int k0 = -K + (K % 2 ? 1 : 0);
        for (int k = k0; k <= K; k += 2) ly.entries.push_back({comp, k});
        break;
      }
      default: {
        const int p0 = (p == Parity::OddCos || p == Parity::OddSin) ? 1
                       : (p == Parity::EvenSin)                     ? 2
                                                                    : 0;
        for (int k = p0; k <= K; k += 2) ly.entries.push_back({comp, k});
        break;
      }
    }
  }
  ly.first_index[kNumComps] = ly.size();
  return ly;
}

RealLayout make_real_layout(int K) {
  require_input(K >= 1, "layout: K must be >= 1");
  RealLayout rl;
  rl.K = K;
  for (int comp = 0; comp < kNumComps; ++comp) {
    rl.first_index[size_t(comp)] = rl.size();
    const Parity p = kCompParity[size_t(comp)];
    switch (p) {
      case Parity::Scalar:
        rl.entries.push_back({comp, 0, false});
        break;
      case Parity::EvenGeneral:
        for (int k = 0; k <= K; k += 2) rl.entries.push_back({comp, k, false});
        for (int k = 2; k <= K; k += 2) rl.entries.push_back({comp, k, true});
        break;
      case Parity::EvenCos:
        for (int k = 0; k <= K; k += 2) rl.entries.push_back({comp, k, false});
        break;
      case Parity::EvenSin:
        for (int k = 2; k <= K; k += 2) rl.entries.push_back({comp, k, true});
        break;
      case Parity::OddCos:
        for (int k = 1; k <= K; k += 2) rl.entries.push_back({comp, k, false});
        break;
      case Parity::OddSin:
        for (int k = 1; k <= K; k += 2) rl.entries.push_back({comp, k, true});
        break;
    }
  }
  rl.first_index[kNumComps] = rl.size();
  return rl;
}

FourierCheb<double> component_from_amplitudes(const RealLayout& rl, int comp,
                                              const std::vector<double>& x, int K) {
  FourierCheb<double> phi(K, 0);
  for (int e = rl.first_index[size_t(comp)]; e < rl.first_index[size_t(comp) + 1]; ++e) {
    const auto& en = rl.entries[size_t(e)];
    const double v = x[size_t(e)];
    if (en.comp != comp) throw invariant_error("component_from_amplitudes: layout walk bug");
    if (en.k == 0) {
      phi.at(0, 0) += Cplx<double>{v, 0.0};
    } else if (!en.is_sin) {
      // A cos(kt) = (A/2) e^{ikt} + (A/2) e^{-ikt}
      phi.at(en.k, 0) += Cplx<double>{0.5 * v, 0.0};
      phi.at(-en.k, 0) += Cplx<double>{0.5 * v, 0.0};
    } else {
      // B sin(kt) = (-iB/2) e^{ikt} + (iB/2) e^{-ikt}
      phi.at(en.k, 0) += Cplx<double>{0.0, -0.5 * v};
      phi.at(-en.k, 0) += Cplx<double>{0.0, 0.5 * v};
    }
  }
  return phi;
}

void amplitudes_from_component(const RealLayout& rl, int comp,
                               const FourierCheb<double>& phi,
                               std::vector<double>& x) {
  for (int e = rl.first_index[size_t(comp)]; e < rl.first_index[size_t(comp) + 1]; ++e) {
    const auto& en = rl.entries[size_t(e)];
    const Cplx<double> v = phi.get(en.k, 0);
    if (en.k == 0)
      x[size_t(e)] = v.re;
    else if (!en.is_sin)
      x[size_t(e)] = 2.0 * v.re;
    else
      x[size_t(e)] = -2.0 * v.im;
  }
}

}  // namespace choreo::series
