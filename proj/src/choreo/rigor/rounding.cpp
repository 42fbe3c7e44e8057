#include "choreo/rigor/rounding.hpp"

#include <cfenv>

#include "choreo/common.hpp"

namespace choreo::rigor {

RoundUpScope::RoundUpScope() : saved_mode_(std::fegetround()) {
  if (std::fesetround(FE_UPWARD) != 0)
    throw invariant_error("RoundUpScope: fesetround(FE_UPWARD) failed");
}

RoundUpScope::~RoundUpScope() { std::fesetround(saved_mode_); }

bool round_up_active() { return std::fegetround() == FE_UPWARD; }

void set_round_upward() {
  if (std::fesetround(FE_UPWARD) != 0)
    throw invariant_error("set_round_upward: fesetround failed");
}

void set_round_downward() {
  if (std::fesetround(FE_DOWNWARD) != 0)
    throw invariant_error("set_round_downward: fesetround failed");
}

void require_round_up() {
  if (!round_up_active())
    throw invariant_error("rigorous arithmetic entered without FE_UPWARD rounding");
}

namespace {
// volatile stops the optimizer from folding these at compile time with the
// default rounding mode.
double div_in_mode(int mode) {
  const int saved = std::fegetround();
  std::fesetround(mode);
  volatile double one = 1.0, three = 3.0;
  volatile double q = one / three;
  std::fesetround(saved);
  return q;
}
double mul_in_mode(int mode) {
  const int saved = std::fegetround();
  std::fesetround(mode);
  volatile double a = 1.0 + 1e-16, b = 1.0 + 3e-16;
  volatile double p = a * b;
  std::fesetround(saved);
  return p;
}
double add_in_mode(int mode) {
  const int saved = std::fegetround();
  std::fesetround(mode);
  volatile double a = 1.0, b = 1e-30;
  volatile double s = a + b;
  std::fesetround(saved);
  return s;
}
}  // namespace

bool directed_rounding_selftest() {
  const bool div_ok = div_in_mode(FE_UPWARD) > div_in_mode(FE_DOWNWARD);
  const bool mul_ok = mul_in_mode(FE_UPWARD) > mul_in_mode(FE_DOWNWARD);
  const bool add_ok = add_in_mode(FE_UPWARD) > 1.0 && add_in_mode(FE_DOWNWARD) == 1.0;
  return div_ok && mul_ok && add_ok;
}

}  // namespace choreo::rigor
