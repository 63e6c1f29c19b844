#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qchan/channel.hpp"

namespace qchan {

struct Ensemble {
  std::vector<double> probs;
  std::vector<Matrix> states;
};

struct CapacityOptions {
  int ensemble_size = 0;  // 0 -> d_in^2
  int max_iters = 400;
  double tol = 1e-5;  // duality-gap target; converged iff gap <= tol
  std::uint64_t seed = 0xcab1e;
  double grid_deg = 1.0;
  int radius_restarts = 32;
  std::optional<Ensemble> init_ensemble;  // e.g. product of factor optima
};

struct CapacityResult {
  double chi_star = 0.0;  // nats, lower-bound estimate
  Ensemble ensemble;
  Matrix avg_input;   // rho*
  Matrix avg_output;  // Phi(rho*)
  double duality_gap = 0.0;
  bool converged = false;
};

struct CapacityCertificate {
  double radius = 0.0;  // sup over pure omega of S(Phi(omega) | Phi(rho))
  double gap = 0.0;     // radius - chi_claim
  bool conclusive = true;
};

// chi(Phi; E) = S(sum pi Phi(rho_i)) - sum pi S(Phi(rho_i)), in nats.
double holevo_chi(const Channel& phi, const Ensemble& ens);

// Holevo capacity by alternating maximization: local ascent of the
// relative-entropy objective per ensemble state, closed-form reweighting of
// the probabilities (damping 0.5), certified through the relative-entropy
// radius at the returned average input.
CapacityResult chi_star(const Channel& phi, const CapacityOptions& opts = {});

// Upper-bound certificate: the radius dominates chi* for every rho, with
// equality exactly at the optimal average input. An inconclusive result is
// returned when some output escapes the support of Phi(rho).
CapacityCertificate certify_capacity(const Channel& phi, const Matrix& rho,
                                     double chi_claim,
                                     const CapacityOptions& opts = {});

// ln 2 - S_min(Phi) for unital qubit channels; throws otherwise.
double chi_star_unital_qubit(const Channel& phi);

}  // namespace qchan
