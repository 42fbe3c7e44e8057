#pragma once

#include <string>
#include <vector>

#include "choreo/model/state.hpp"
#include "choreo/solver/newton.hpp"

namespace choreo::solver {

struct ContinuationOptions {
  model::Domain dom;  // global frame; omega_hi must be 1 (the seeding frequency)
  NewtonOptions newton{};
  int max_depth = 8;  // recursion depth of the step bisection between nodes
  bool verbose = false;
};

struct NodeInfo {
  double s = 0.0;
  double omega = 0.0;
  int iterations = 0;
  int substeps = 0;      // extra intermediate solves needed to reach the node
  double residual = 0.0;
};

struct BranchResult {
  bool ok = false;
  std::string message;
  model::State<double> branch;              // Fourier-Chebyshev data on dom
  std::vector<model::State<double>> nodes;  // point slices at the grid, s descending
  std::vector<NodeInfo> info;
};

// March the family from the exact triangle at frequency 1 down the Chebyshev
// grid of dom, then interpolate the per-node slices into a global state and
// pin the endpoint identities.
BranchResult continue_branch(const ContinuationOptions& opt);

// Point slice of a global state at parameter s (components evaluated in s).
model::State<double> slice_state(const model::State<double>& x, double s);

// Post-pass: adjust the top Chebyshev coefficients so that the slice at s = 1
// equals the stored triangle exactly, and beta, u1, v1 vanish exactly at
// s = -1 when the frame reaches frequency 0.
void pin_endpoints(model::State<double>& branch);

}  // namespace choreo::solver
