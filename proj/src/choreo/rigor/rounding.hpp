#pragma once

namespace choreo::rigor {

// Every Interval operation in this library assumes the ambient IEEE-754 rounding
// mode is round-toward-+infinity (FE_UPWARD).  Lower bounds are obtained with the
// negation trick: down(x op y) = -up((-x) op' (-y)).  A RoundUpScope installs the
// mode on construction and restores the previous mode on destruction.
//
// The rounding mode is thread-local state (MXCSR on x86-64): each worker thread
// performing rigorous arithmetic must construct its own RoundUpScope.
class RoundUpScope {
 public:
  RoundUpScope();
  ~RoundUpScope();
  RoundUpScope(const RoundUpScope&) = delete;
  RoundUpScope& operator=(const RoundUpScope&) = delete;

 private:
  int saved_mode_;
};

// True iff the current rounding mode is FE_UPWARD.
bool round_up_active();

// Raw mode switches for the directed dense kernels, which run whole matrix
// products in one direction at a time.  Callers are responsible for restoring
// FE_UPWARD before touching Interval arithmetic again (a RoundUpScope higher
// up the stack keeps the program-level invariant).
void set_round_upward();
void set_round_downward();

// Throws invariant_error unless round-up mode is active.  Called at the entry of
// every rigorous routine that is cheap enough to afford the check.
void require_round_up();

// Exercises directed rounding end to end (the mode actually changes the results
// of +, *, / on doubles).  Returns false if the platform or the compiler broke
// it, in which case no rigorous claim made by this library is valid.
bool directed_rounding_selftest();

}  // namespace choreo::rigor
