#pragma once

#include <cstdint>
#include <vector>

#include "qchan/channel.hpp"

namespace qchan {

struct PurityOptions {
  int restarts = 64;
  int max_iters = 500;
  double tol = 1e-10;
  double grid_deg = 1.0;  // Bloch grid resolution for qubit inputs
  std::uint64_t seed = 0x51c0ffee;
  std::vector<Vector> init_states;  // extra ascent starts (e.g. product seeds)
};

struct PurityResult {
  double value = 0.0;        // lower bound by construction
  Matrix argmax_state;       // pure input attaining value
  double p = 0.0;
  int restarts_used = 0;
  bool converged = false;
};

// Maximal output purity: sup over pure inputs of ||Phi(rho)||_p.
// Pure states suffice since rho -> ||Phi(rho)||_p is convex. Qubit inputs
// use a deterministic Bloch grid refined by local ascent; larger inputs use
// multi-start projected gradient ascent. Refuses d_in > 16.
PurityResult nu_p(const Channel& phi, double p, const PurityOptions& opts = {});

// Closed form for the depolarizing channel:
// [((1+l)/2)^p + ((1-l)/2)^p]^{1/p}. Requires l in [-1/3, 1].
double nu_p_depolarizing(double lambda, double p);

struct SminResult {
  double value = 0.0;
  Matrix argmin_state;
  // Finite-difference -d/dp ||Phi(argmin)||_p at p=1, for consistency checks.
  double norm_derivative = 0.0;
  bool converged = false;
};

// Minimal output entropy: inf over pure inputs of S(Phi(rho)).
SminResult s_min(const Channel& phi, const PurityOptions& opts = {});

}  // namespace qchan
