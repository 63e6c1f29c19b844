#include "qchan/optim.hpp"

namespace qchan {

AscentResult sphere_ascend(const SphereObjective& f, const SphereGradient& g,
                           Vector psi0, int max_iters, double tol) {
  AscentResult r;
  r.psi = psi0.normalized();
  r.value = f(r.psi);
  double step = 0.1;
  for (int it = 0; it < max_iters; ++it) {
    r.iterations = it + 1;
    Vector grad = g(r.psi);
    Vector d = grad - r.psi.dot(grad) * r.psi;  // tangent projection
    if (d.norm() < 1e-14) {
      r.converged = true;
      return r;
    }
    bool improved = false;
    double delta = 0.0;
    while (step > 1e-16) {
      Vector trial = (r.psi + step * d).normalized();
      double tv = f(trial);
      if (tv > r.value) {
        delta = tv - r.value;
        r.psi = trial;
        r.value = tv;
        step *= 1.6;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved || delta < tol) {
      r.converged = true;
      return r;
    }
  }
  return r;  // iteration cap hit, not converged
}

}  // namespace qchan
