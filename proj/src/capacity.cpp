#include "qchan/capacity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qchan/optim.hpp"
#include "qchan/purity.hpp"

namespace qchan {

namespace {

double entropy_clipped(const Matrix& sigma) {
  Eigen::VectorXd e = hermitian_eigenvalues((sigma + sigma.adjoint()) / 2.0);
  double s = 0.0;
  for (int i = 0; i < e.size(); ++i)
    if (e[i] > 0.0) s -= e[i] * std::log(e[i]);
  return s;
}

// Pseudo-logarithm of a PSD reference state plus its null-space projector.
struct LogRef {
  Matrix log;
  Matrix off_support;
  double min_eig = 0.0;
};

LogRef make_log_ref(const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((sigma + sigma.adjoint()) / 2.0);
  const Eigen::VectorXd& e = es.eigenvalues();
  const Matrix& u = es.eigenvectors();
  LogRef ref;
  ref.min_eig = e.minCoeff();
  ref.log = Matrix::Zero(sigma.rows(), sigma.cols());
  ref.off_support = Matrix::Zero(sigma.rows(), sigma.cols());
  for (int k = 0; k < e.size(); ++k) {
    Matrix proj = u.col(k) * u.col(k).adjoint();
    if (e[k] > kSupportTol) {
      ref.log += std::log(e[k]) * proj;
    } else {
      ref.off_support += proj;
    }
  }
  return ref;
}

// S(sigma | ref) using the pseudo-log; +infinity on support leakage.
double divergence(const Matrix& sigma, const LogRef& ref) {
  double off = ((ref.off_support * sigma).trace()).real();
  if (off > 1e-8) return kInfinity;
  double tr_log_self = -entropy_clipped(sigma);
  double cross = (sigma * ref.log).trace().real();
  return tr_log_self - cross;
}

Vector top_eigvec(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  return es.eigenvectors().col(rho.rows() - 1);
}

Vector bloch_vector_state(const Eigen::Vector3d& w) {
  double theta = std::acos(std::clamp(w[2], -1.0, 1.0));
  double varphi = std::atan2(w[1], w[0]);
  Vector psi(2);
  psi[0] = std::cos(theta / 2.0);
  psi[1] = std::polar(std::sin(theta / 2.0), varphi);
  return psi;
}

struct SupResult {
  double value = -kInfinity;
  Vector psi;
  bool hit_infinity = false;
};

// sup over pure inputs of S(Phi(omega) | ref). A deterministic Bloch grid
// seeds qubit inputs; multi-start ascent covers the rest. Extra starts are
// always included (warm starts from a running optimization).
SupResult sup_divergence(const Channel& phi, const LogRef& ref,
                         double grid_deg, int restarts, std::uint64_t seed,
                         const std::vector<Vector>& extra_starts) {
  auto objective = [&](const Vector& psi) {
    return divergence(phi.apply(psi * psi.adjoint()), ref);
  };
  auto gradient = [&](const Vector& psi) -> Vector {
    Matrix sigma = phi.apply(psi * psi.adjoint());
    Matrix h = (sigma + sigma.adjoint()) / 2.0;
    Matrix lg = hermitian_function(
        h, [](double e) { return std::log(std::max(e, 1e-18)) + 1.0; });
    return phi.apply_adjoint(lg - ref.log) * psi;
  };

  SupResult best;
  std::vector<Vector> starts = extra_starts;
  if (phi.d_in() == 2) {
    const int n_theta =
        std::max(4, static_cast<int>(std::ceil(180.0 / grid_deg)));
    double grid_best = -kInfinity;
    Vector grid_psi;
    for (int i = 0; i <= n_theta; ++i) {
      double theta = std::numbers::pi * i / n_theta;
      int n_phi = std::max(
          1, static_cast<int>(std::ceil(std::sin(theta) * 2 * n_theta)));
      for (int j = 0; j < n_phi; ++j) {
        double varphi = 2.0 * std::numbers::pi * j / n_phi;
        Eigen::Vector3d w{std::sin(theta) * std::cos(varphi),
                          std::sin(theta) * std::sin(varphi), std::cos(theta)};
        Vector psi = bloch_vector_state(w);
        double v = objective(psi);
        if (std::isinf(v)) {
          best.hit_infinity = true;
          continue;
        }
        if (v > grid_best) {
          grid_best = v;
          grid_psi = psi;
        }
      }
    }
    if (grid_psi.size() > 0) starts.push_back(grid_psi);
  } else {
    Rng rng(seed, 0xad105);
    for (int s = 0; s < restarts; ++s) {
      Rng sub = rng.derive(static_cast<std::uint64_t>(s));
      starts.push_back(random_unit_vector(phi.d_in(), sub));
    }
  }

  for (const auto& psi0 : starts) {
    double v0 = objective(psi0);
    if (std::isinf(v0)) {
      best.hit_infinity = true;
      continue;
    }
    AscentResult ar = sphere_ascend(objective, gradient, psi0, 300, 1e-13);
    if (ar.value > best.value) {
      best.value = ar.value;
      best.psi = ar.psi;
    }
  }
  return best;
}

}  // namespace

double holevo_chi(const Channel& phi, const Ensemble& ens) {
  if (ens.probs.size() != ens.states.size() || ens.states.empty()) {
    throw std::invalid_argument("holevo_chi: malformed ensemble");
  }
  double total = 0.0;
  for (double p : ens.probs) {
    if (p < -1e-12) throw std::invalid_argument("holevo_chi: negative weight");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("holevo_chi: weights do not sum to 1");
  }
  Matrix avg = Matrix::Zero(phi.d_out(), phi.d_out());
  double mean_entropy = 0.0;
  for (std::size_t i = 0; i < ens.states.size(); ++i) {
    if (ens.states[i].rows() != phi.d_in()) {
      throw std::invalid_argument("holevo_chi: state dimension mismatch");
    }
    Matrix out = phi.apply(ens.states[i]);
    avg += ens.probs[i] * out;
    mean_entropy += ens.probs[i] * entropy_clipped(out);
  }
  return entropy_clipped(avg) - mean_entropy;
}

CapacityResult chi_star(const Channel& phi, const CapacityOptions& opts) {
  const int d = phi.d_in();
  const int n = opts.ensemble_size > 0 ? opts.ensemble_size : d * d;

  std::vector<Vector> psis;
  std::vector<double> probs;
  if (opts.init_ensemble) {
    for (std::size_t i = 0; i < opts.init_ensemble->states.size(); ++i) {
      psis.push_back(top_eigvec(opts.init_ensemble->states[i]));
      probs.push_back(opts.init_ensemble->probs[i]);
    }
  } else {
    if (d == 2) {
      // Cardinal Bloch states make good deterministic seeds.
      for (int axis = 0; axis < 3; ++axis) {
        for (double sgn : {1.0, -1.0}) {
          Eigen::Vector3d w = Eigen::Vector3d::Zero();
          w[axis] = sgn;
          psis.push_back(bloch_vector_state(w));
        }
      }
    }
    Rng rng(opts.seed);
    for (int i = static_cast<int>(psis.size()); i < n; ++i) {
      Rng sub = rng.derive(static_cast<std::uint64_t>(i));
      psis.push_back(random_unit_vector(d, sub));
    }
    probs.assign(psis.size(), 1.0 / static_cast<double>(psis.size()));
  }
  std::vector<Matrix> outputs;
  for (const auto& psi : psis) outputs.push_back(phi.apply(psi * psi.adjoint()));

  auto average_output = [&] {
    Matrix avg = Matrix::Zero(phi.d_out(), phi.d_out());
    for (std::size_t i = 0; i < outputs.size(); ++i)
      avg += probs[i] * outputs[i];
    return avg;
  };
  auto current_chi = [&] {
    Matrix avg = average_output();
    double chi = entropy_clipped(avg);
    for (std::size_t i = 0; i < outputs.size(); ++i)
      chi -= probs[i] * entropy_clipped(outputs[i]);
    return chi;
  };

  // Blahut-Arimoto over a growing support of pure states. Reweighting over a
  // fixed support is monotone in chi; the support itself is only grown, by
  // injecting the best-responder state against the current average output,
  // never mutated, so the iteration cannot degrade. Terminates when the
  // responder's divergence (an upper-bound certificate for the support-free
  // problem) closes on chi.
  constexpr std::size_t kMaxSupport = 48;
  double best_chi = current_chi();
  std::vector<Vector> best_psis = psis;
  std::vector<double> best_probs = probs;

  const int outer_cap = std::min(opts.max_iters, 100);
  for (int iter = 0; iter < outer_cap; ++iter) {
    double prev_chi = -1.0;
    for (int sub = 0; sub < 400; ++sub) {
      if (sub % 20 == 19) {
        double c = current_chi();
        if (std::abs(c - prev_chi) < 1e-13) break;
        prev_chi = c;
      }
      LogRef ref = make_log_ref(average_output());
      const std::size_t sz = outputs.size();
      std::vector<double> div(sz);
      double d_max = -kInfinity;
      for (std::size_t i = 0; i < sz; ++i) {
        div[i] = divergence(outputs[i], ref);
        if (std::isinf(div[i])) div[i] = 1e3;
        d_max = std::max(d_max, div[i]);
      }
      double z = 0.0;
      std::vector<double> w(sz);
      for (std::size_t i = 0; i < sz; ++i) {
        w[i] = std::max(probs[i], 1e-15) * std::exp(div[i] - d_max);
        z += w[i];
      }
      for (std::size_t i = 0; i < sz; ++i) probs[i] = w[i] / z;
    }

    double chi = current_chi();
    if (chi > best_chi) {
      best_chi = chi;
      best_psis = psis;
      best_probs = probs;
    }

    LogRef ref = make_log_ref(average_output());
    SupResult responder = sup_divergence(phi, ref, opts.grid_deg, 16,
                                         opts.seed + iter, psis);
    if (responder.psi.size() == 0 ||
        responder.value <= chi + std::max(opts.tol * 0.25, 1e-10)) {
      break;  // certificate at the current average closes the gap
    }

    if (psis.size() >= kMaxSupport) {
      std::size_t lightest = 0;
      for (std::size_t i = 1; i < probs.size(); ++i)
        if (probs[i] < probs[lightest]) lightest = i;
      psis.erase(psis.begin() + lightest);
      probs.erase(probs.begin() + lightest);
      outputs.erase(outputs.begin() + lightest);
      double z = 0.0;
      for (double pw : probs) z += pw;
      for (double& pw : probs) pw /= z;
    }
    psis.push_back(responder.psi);
    outputs.push_back(phi.apply(responder.psi * responder.psi.adjoint()));
    for (double& pw : probs) pw *= 0.9;
    probs.push_back(0.1);
  }
  double final_chi = current_chi();
  if (final_chi > best_chi) {
    best_chi = final_chi;
    best_psis = psis;
    best_probs = probs;
  }

  {
    double z = 0.0;
    for (double pw : best_probs) z += pw;
    for (double& pw : best_probs) pw /= z;
  }
  CapacityResult result;
  result.ensemble.probs = best_probs;
  for (const auto& psi : best_psis) {
    result.ensemble.states.push_back(psi * psi.adjoint());
  }
  result.avg_input = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < best_psis.size(); ++i) {
    result.avg_input += best_probs[i] * result.ensemble.states[i];
  }
  result.avg_output = phi.apply(result.avg_input);
  result.chi_star = best_chi;

  CapacityCertificate cert =
      certify_capacity(phi, result.avg_input, result.chi_star, opts);
  result.duality_gap = cert.gap;
  result.converged = cert.conclusive && cert.gap <= opts.tol;
  return result;
}

CapacityCertificate certify_capacity(const Channel& phi, const Matrix& rho,
                                     double chi_claim,
                                     const CapacityOptions& opts) {
  require_density(rho);
  if (rho.rows() != phi.d_in()) {
    throw std::invalid_argument("certify_capacity: dimension mismatch");
  }
  LogRef ref = make_log_ref(phi.apply(rho));
  SupResult sup = sup_divergence(phi, ref, opts.grid_deg, opts.radius_restarts,
                                 opts.seed, {});
  CapacityCertificate cert;
  if (sup.hit_infinity) {
    cert.radius = kInfinity;
    cert.gap = kInfinity;
    cert.conclusive = false;
    return cert;
  }
  cert.radius = sup.value;
  cert.gap = sup.value - chi_claim;
  cert.conclusive = true;
  return cert;
}

double chi_star_unital_qubit(const Channel& phi) {
  if (phi.d_in() != 2 || phi.d_out() != 2 || !phi.is_unital(1e-12)) {
    throw std::invalid_argument(
        "chi_star_unital_qubit: formula applies to unital qubit channels "
        "only");
  }
  return std::log(2.0) - s_min(phi).value;
}

}  // namespace qchan
