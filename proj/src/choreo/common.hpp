#pragma once

#include <stdexcept>
#include <string>

namespace choreo {

// Thrown for malformed user input: bad flags, unreadable or inconsistent files,
// out-of-range parameters.  The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant is violated (directed rounding unavailable,
// off-class residual not containing zero, NaN in rigorous data, ...).  The CLI
// maps this to exit code 3.  A thrown invariant_error means the run's output
// must not be trusted.
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require_input(bool cond, const std::string& msg) {
  if (!cond) throw input_error(msg);
}

inline void require_invariant(bool cond, const std::string& msg) {
  if (!cond) throw invariant_error(msg);
}

}  // namespace choreo
