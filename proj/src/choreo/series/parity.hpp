#pragma once

#include <string>

#include "choreo/common.hpp"

namespace choreo::series {

// Symmetry classes of the 2*pi-periodic components.  "Even"/"Odd" refers to the
// Fourier index parity; "Cos"/"Sin" to the reflection symmetry t -> -t
// (cos-type components satisfy c_{-k} = c_k, sin-type c_{-k} = -c_k, both real).
// EvenGeneral keeps both cos and sin amplitudes on even modes (reality only);
// Scalar components have no Fourier dependence at all.
enum class Parity { EvenCos, EvenSin, OddCos, OddSin, EvenGeneral, Scalar };

inline bool mode_allowed(Parity p, int k) {
  const int a = k < 0 ? -k : k;
  switch (p) {
    case Parity::EvenCos:
    case Parity::EvenSin:
    case Parity::EvenGeneral:
      return a % 2 == 0;
    case Parity::OddCos:
    case Parity::OddSin:
      return a % 2 == 1;
    case Parity::Scalar:
      return k == 0;
  }
  return false;
}

// Reflection sign sigma in c_{-k} = sigma * c_k; only meaningful for the four
// cos/sin classes.
inline int reflection_sign(Parity p) {
  switch (p) {
    case Parity::EvenCos:
    case Parity::OddCos:
      return +1;
    case Parity::EvenSin:
    case Parity::OddSin:
      return -1;
    default:
      throw invariant_error("reflection_sign: class has no reflection relation");
  }
}

inline bool has_reflection(Parity p) {
  return p == Parity::EvenCos || p == Parity::EvenSin || p == Parity::OddCos ||
         p == Parity::OddSin;
}

inline std::string parity_name(Parity p) {
  switch (p) {
    case Parity::EvenCos: return "even_cos";
    case Parity::EvenSin: return "even_sin";
    case Parity::OddCos: return "odd_cos";
    case Parity::OddSin: return "odd_sin";
    case Parity::EvenGeneral: return "even_general";
    case Parity::Scalar: return "scalar";
  }
  return "?";
}

inline Parity parity_from_name(const std::string& s) {
  if (s == "even_cos") return Parity::EvenCos;
  if (s == "even_sin") return Parity::EvenSin;
  if (s == "odd_cos") return Parity::OddCos;
  if (s == "odd_sin") return Parity::OddSin;
  if (s == "even_general") return Parity::EvenGeneral;
  if (s == "scalar") return Parity::Scalar;
  throw input_error("unknown symmetry class name: " + s);
}

}  // namespace choreo::series
