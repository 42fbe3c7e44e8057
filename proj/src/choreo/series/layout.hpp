#pragma once

#include <array>
#include <vector>

#include "choreo/series/fouriercheb.hpp"
#include "choreo/series/parity.hpp"

namespace choreo::series {

// Component order of the unknown x = (a, beta, alpha, u1, u2, u3, v1, v2, v3, w)
// and of the equations F = (eta1, eta2, gamma, g1, g2, g3, f1, f2, f3, h).
// Both sides share the same class structure: three scalars, a u-parity triple,
// a v-parity triple, and one even-general component, so a single Layout type
// describes either side.
inline constexpr int kNumComps = 10;
inline constexpr std::array<Parity, kNumComps> kCompParity = {
    Parity::Scalar,   Parity::Scalar,  Parity::Scalar,       // a, beta, alpha
    Parity::EvenCos,  Parity::EvenSin, Parity::OddCos,       // u1, u2, u3
    Parity::EvenSin,  Parity::EvenCos, Parity::OddSin,       // v1, v2, v3
    Parity::EvenGeneral};                                    // w

enum Comp : int {
  CompA = 0,
  CompBeta = 1,
  CompAlpha = 2,
  CompU1 = 3,
  CompU2 = 4,
  CompU3 = 5,
  CompV1 = 6,
  CompV2 = 7,
  CompV3 = 8,
  CompW = 9,
};

inline const char* comp_name(int comp) {
  static const char* names[kNumComps] = {"a",  "beta", "alpha", "u1", "u2",
                                         "u3", "v1",   "v2",    "v3", "w"};
  return names[comp];
}

// Representative-complex coordinates: one coordinate per Fourier orbit {k,-k}
// for the cos/sin classes (k >= 0, norm weight (2-delta_{k0}) nu^k), all
// two-sided even modes for the even-general class (weight nu^{|k|}), and a
// single weight-1 coordinate per scalar.  In these coordinates the operator
// norm of a matrix acting between symmetry-class subspaces is exactly the
// maximum over columns of the weighted modulus column sum divided by the
// column weight.
struct Layout {
  struct Entry {
    int comp;
    int k;
  };
  int K = 0;
  std::vector<Entry> entries;
  // first_index[comp] is the global index of the component's first entry.
  std::array<int, kNumComps + 1> first_index{};

  int size() const { return int(entries.size()); }

  // Global index of (comp, k); -1 when the mode is not part of the layout.
  int index_of(int comp, int k) const;

  // Norm weight of an entry is multiplicity(e) * nu^{nu_exponent(e)}; the nu
  // power is exposed as a table index so callers can substitute rigorous powers.
  // multiplicity = 2 - delta_{k0} for cos/sin classes, 1 otherwise.
  double multiplicity(int e) const;
  int nu_exponent(int e) const { return std::abs(entries[size_t(e)].k); }
};

Layout make_layout(int K);

// Real-amplitude coordinates used by the finite-dimensional Newton solver:
// phi = sum_{k>=0} A_k cos(kt) + sum_{k>=1} B_k sin(kt) restricted to the class.
struct RealLayout {
  struct Entry {
    int comp;
    int k;
    bool is_sin;
  };
  int K = 0;
  std::vector<Entry> entries;
  std::array<int, kNumComps + 1> first_index{};

  int size() const { return int(entries.size()); }
};

RealLayout make_real_layout(int K);

// Build the full two-sided Fourier data (N = 0) of one component from its real
// amplitudes, and extract amplitudes from a (class-conforming) slice.
FourierCheb<double> component_from_amplitudes(const RealLayout& rl, int comp,
                                              const std::vector<double>& x, int K);
void amplitudes_from_component(const RealLayout& rl, int comp,
                               const FourierCheb<double>& phi,
                               std::vector<double>& x);

}  // namespace choreo::series
