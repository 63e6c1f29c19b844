#include "qchan/purity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qchan/optim.hpp"

namespace qchan {

namespace {

constexpr double kPi = std::numbers::pi;

// Sum |e|^p over the eigenvalues of a 2x2 Hermitian matrix, closed form.
double schatten_pow_2x2(const Matrix& s, double p) {
  double a = s(0, 0).real();
  double d = s(1, 1).real();
  double mean = (a + d) / 2.0;
  double rad = std::hypot((a - d) / 2.0, std::abs(s(0, 1)));
  return std::pow(std::abs(mean + rad), p) + std::pow(std::abs(mean - rad), p);
}

double output_norm(const Channel& phi, const Matrix& rho, double p) {
  Matrix sigma = phi.apply(rho);
  Matrix h = (sigma + sigma.adjoint()) / 2.0;
  if (h.rows() == 2) return std::pow(schatten_pow_2x2(h, p), 1.0 / p);
  return schatten_norm(h, p);
}

Eigen::Vector3d sphere_point(double theta, double varphi) {
  return {std::sin(theta) * std::cos(varphi),
          std::sin(theta) * std::sin(varphi), std::cos(theta)};
}

Vector bloch_vector_state(const Eigen::Vector3d& w) {
  // Unit Bloch vector -> pure state amplitudes.
  double theta = std::acos(std::clamp(w[2], -1.0, 1.0));
  double varphi = std::atan2(w[1], w[0]);
  Vector psi(2);
  psi[0] = std::cos(theta / 2.0);
  psi[1] = std::polar(std::sin(theta / 2.0), varphi);
  return psi;
}

// Deterministic scan of the Bloch sphere; returns the best direction.
template <typename F>
Eigen::Vector3d bloch_grid_best(double grid_deg, const F& objective) {
  const int n_theta = std::max(4, static_cast<int>(std::ceil(180.0 / grid_deg)));
  double best = -kInfinity;
  Eigen::Vector3d best_w{0.0, 0.0, 1.0};
  for (int i = 0; i <= n_theta; ++i) {
    double theta = kPi * i / n_theta;
    int n_phi =
        std::max(1, static_cast<int>(std::ceil(std::sin(theta) * 2 * n_theta)));
    for (int j = 0; j < n_phi; ++j) {
      double varphi = 2.0 * kPi * j / n_phi;
      Eigen::Vector3d w = sphere_point(theta, varphi);
      double v = objective(w);
      if (v > best) {
        best = v;
        best_w = w;
      }
    }
  }
  return best_w;
}

// Ascent of a smooth objective over unit Bloch vectors.
template <typename F, typename G>
Eigen::Vector3d bloch_ascend(Eigen::Vector3d w, const F& objective,
                             const G& gradient, int max_iters, double tol) {
  double val = objective(w);
  double step = 0.1;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::Vector3d g = gradient(w);
    Eigen::Vector3d d = g - g.dot(w) * w;
    if (d.norm() < 1e-15) break;
    bool improved = false;
    double delta = 0.0;
    while (step > 1e-16) {
      Eigen::Vector3d trial = (w + step * d).normalized();
      double tv = objective(trial);
      if (tv > val) {
        delta = tv - val;
        w = trial;
        val = tv;
        step *= 1.6;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved || delta < tol) break;
  }
  return w;
}

// Largest attainable output Bloch radius |lambda.w + t| of an affine qubit
// map, with the attaining input direction.
struct RadiusResult {
  double r;
  Eigen::Vector3d w;
};

RadiusResult max_output_radius(const QubitAffineParams& p, double grid_deg) {
  auto radius = [&](const Eigen::Vector3d& w) {
    return (p.lambda.cwiseProduct(w) + p.t).norm();
  };
  auto grad = [&](const Eigen::Vector3d& w) -> Eigen::Vector3d {
    Eigen::Vector3d u = p.lambda.cwiseProduct(w) + p.t;
    double r = u.norm();
    if (r < 1e-14) return Eigen::Vector3d::Zero();
    return p.lambda.cwiseProduct(u) / r;
  };
  Eigen::Vector3d w0 = bloch_grid_best(grid_deg, radius);
  Eigen::Vector3d w = bloch_ascend(w0, radius, grad, 300, 1e-15);
  return {radius(w), w};
}

double depolarizing_like_value(double r, double p) {
  return std::pow(std::pow((1.0 + r) / 2.0, p) + std::pow((1.0 - r) / 2.0, p),
                  1.0 / p);
}

double binary_entropy(double q) {
  double s = 0.0;
  if (q > 0.0) s -= q * std::log(q);
  if (q < 1.0) s -= (1.0 - q) * std::log(1.0 - q);
  return s;
}

// Gradient d/d(conj psi) of Tr Phi(psi psi*)^p.
Vector nu_gradient(const Channel& phi, const Vector& psi, double p) {
  Matrix sigma = phi.apply(psi * psi.adjoint());
  Matrix h = (sigma + sigma.adjoint()) / 2.0;
  Matrix a = hermitian_function(
      h, [p](double e) { return e > 0.0 ? p * std::pow(e, p - 1.0) : 0.0; });
  return phi.apply_adjoint(a) * psi;
}

double entropy_clipped(const Matrix& sigma) {
  Eigen::VectorXd e = hermitian_eigenvalues((sigma + sigma.adjoint()) / 2.0);
  double s = 0.0;
  for (int i = 0; i < e.size(); ++i)
    if (e[i] > 0.0) s -= e[i] * std::log(e[i]);
  return s;
}

}  // namespace

double nu_p_depolarizing(double lambda, double p) {
  if (lambda < -1.0 / 3.0 - 1e-12 || lambda > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "nu_p_depolarizing: lambda outside [-1/3, 1] is not completely "
        "positive");
  }
  if (p < 1.0) throw std::invalid_argument("nu_p_depolarizing: p must be >= 1");
  return depolarizing_like_value(std::abs(lambda), p);
}

PurityResult nu_p(const Channel& phi, double p, const PurityOptions& opts) {
  if (p < 1.0) throw std::invalid_argument("nu_p: p must be >= 1");
  if (phi.d_in() > 16) {
    throw std::invalid_argument("nu_p: refusing input dimension > 16");
  }

  PurityResult result;
  result.p = p;

  if (p < 1.0 + 1e-6) {
    // ||Phi(rho)||_1 = Tr Phi(rho) = 1 for every state and every CPTP map.
    Vector e0 = Vector::Zero(phi.d_in());
    e0[0] = 1.0;
    result.value = 1.0;
    result.argmax_state = e0 * e0.adjoint();
    result.converged = true;
    return result;
  }

  if (const auto* ap = phi.affine_params()) {
    // The output spectrum is (1 +- |lambda.w + t|)/2, monotone in the output
    // radius, so the search reduces to the radius maximization.
    RadiusResult rr = max_output_radius(*ap, opts.grid_deg);
    result.value = depolarizing_like_value(rr.r, p);
    result.argmax_state = bloch_state(rr.w);
    result.restarts_used = 1;
    result.converged = true;
    return result;
  }

  auto objective = [&](const Vector& psi) {
    return output_norm(phi, psi * psi.adjoint(), p);
  };
  auto gradient = [&](const Vector& psi) { return nu_gradient(phi, psi, p); };

  std::vector<Vector> starts = opts.init_states;
  if (phi.d_in() == 2) {
    auto bloch_obj = [&](const Eigen::Vector3d& w) {
      return output_norm(phi, bloch_state(w), p);
    };
    starts.push_back(bloch_vector_state(bloch_grid_best(opts.grid_deg, bloch_obj)));
  }
  Rng rng(opts.seed);
  const int random_starts = phi.d_in() == 2 ? 4 : opts.restarts;
  for (int s = 0; s < random_starts; ++s) {
    Rng sub = rng.derive(static_cast<std::uint64_t>(s));
    starts.push_back(random_unit_vector(phi.d_in(), sub));
  }

  bool best_converged = false;
  for (const auto& psi0 : starts) {
    AscentResult ar =
        sphere_ascend(objective, gradient, psi0, opts.max_iters, opts.tol);
    ++result.restarts_used;
    if (ar.value > result.value) {
      result.value = ar.value;
      result.argmax_state = ar.psi * ar.psi.adjoint();
      best_converged = ar.converged;
    }
  }
  result.converged = best_converged;
  return result;
}

SminResult s_min(const Channel& phi, const PurityOptions& opts) {
  if (phi.d_in() > 16) {
    throw std::invalid_argument("s_min: refusing input dimension > 16");
  }
  SminResult result;

  if (const auto* ap = phi.affine_params()) {
    RadiusResult rr = max_output_radius(*ap, opts.grid_deg);
    result.value = binary_entropy((1.0 + rr.r) / 2.0);
    result.argmin_state = bloch_state(rr.w);
    result.converged = true;
  } else {
    // Minimize entropy == ascend -S(Phi(psi psi*)).
    auto objective = [&](const Vector& psi) {
      return -entropy_clipped(phi.apply(psi * psi.adjoint()));
    };
    auto gradient = [&](const Vector& psi) -> Vector {
      Matrix sigma = phi.apply(psi * psi.adjoint());
      Matrix h = (sigma + sigma.adjoint()) / 2.0;
      Matrix lg = hermitian_function(
          h, [](double e) { return std::log(std::max(e, 1e-18)) + 1.0; });
      return Vector(-(phi.apply_adjoint(lg) * psi));
    };

    std::vector<Vector> starts = opts.init_states;
    if (phi.d_in() == 2) {
      auto bloch_obj = [&](const Eigen::Vector3d& w) {
        return -entropy_clipped(phi.apply(bloch_state(w)));
      };
      starts.push_back(
          bloch_vector_state(bloch_grid_best(opts.grid_deg, bloch_obj)));
    }
    Rng rng(opts.seed);
    const int random_starts = phi.d_in() == 2 ? 4 : opts.restarts;
    for (int s = 0; s < random_starts; ++s) {
      Rng sub = rng.derive(static_cast<std::uint64_t>(s));
      starts.push_back(random_unit_vector(phi.d_in(), sub));
    }

    double best = -kInfinity;
    for (const auto& psi0 : starts) {
      AscentResult ar =
          sphere_ascend(objective, gradient, psi0, opts.max_iters, opts.tol);
      if (ar.value > best) {
        best = ar.value;
        result.argmin_state = ar.psi * ar.psi.adjoint();
        result.converged = ar.converged;
      }
    }
    result.value = -best;
  }

  Matrix out = phi.apply(result.argmin_state);
  result.norm_derivative =
      -norm_derivative_at_one((out + out.adjoint()) / 2.0, 1e-4);
  return result;
}

}  // namespace qchan
