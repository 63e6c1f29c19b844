#pragma once

#include <functional>

#include "qchan/matcore.hpp"

namespace qchan {

// Local ascent machinery shared by the purity and capacity optimizers.
// Objectives are real functions of a unit vector psi; gradients are the
// Wirtinger derivative d/d(conj psi), reported as a vector.

struct AscentResult {
  Vector psi;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

using SphereObjective = std::function<double(const Vector&)>;
using SphereGradient = std::function<Vector(const Vector&)>;

// Projected gradient ascent on the unit sphere with step halving.
AscentResult sphere_ascend(const SphereObjective& f, const SphereGradient& g,
                           Vector psi0, int max_iters, double tol);

}  // namespace qchan
