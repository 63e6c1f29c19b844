#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qchan/capacity.hpp"
#include "qchan/purity.hpp"

using namespace qchan;

namespace {

Channel depolarizing(double lambda) {
  QubitAffineParams p;
  p.lambda = {lambda, lambda, lambda};
  return Channel::qubit_affine(p);
}

Ensemble uniform_basis_ensemble(int dim) {
  Ensemble e;
  for (int i = 0; i < dim; ++i) {
    Matrix proj = Matrix::Zero(dim, dim);
    proj(i, i) = 1.0;
    e.states.push_back(proj);
    e.probs.push_back(1.0 / dim);
  }
  return e;
}

Channel dephasing_qc() {
  std::vector<Matrix> povm = {Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  povm[0](0, 0) = 1.0;
  povm[1](1, 1) = 1.0;
  std::vector<Vector> basis;
  for (int i = 0; i < 2; ++i) {
    Vector e = Vector::Zero(2);
    e[i] = 1.0;
    basis.push_back(std::move(e));
  }
  return Channel::qc(povm, basis);
}

}  // namespace

TEST_CASE("holevo_chi pinned examples") {
  Ensemble single;
  single.probs = {1.0};
  Rng rng(1);
  single.states = {random_density(2, rng)};
  CHECK(holevo_chi(Channel::identity(2), single) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK(holevo_chi(Channel::identity(2), uniform_basis_ensemble(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CHECK(holevo_chi(dephasing_qc(), uniform_basis_ensemble(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("holevo_chi validates ensembles") {
  Ensemble bad;
  bad.probs = {0.7, 0.7};
  Rng rng(2);
  bad.states = {random_density(2, rng), random_density(2, rng)};
  CHECK_THROWS_AS(holevo_chi(Channel::identity(2), bad),
                  std::invalid_argument);
  bad.probs = {1.3, -0.3};
  CHECK_THROWS_AS(holevo_chi(Channel::identity(2), bad),
                  std::invalid_argument);
  Ensemble mismatched;
  mismatched.probs = {1.0};
  mismatched.states = {random_density(3, rng)};
  CHECK_THROWS_AS(holevo_chi(Channel::identity(2), mismatched),
                  std::invalid_argument);
}

TEST_CASE("chi_star pinned examples") {
  CapacityResult id = chi_star(Channel::identity(2));
  CHECK(id.chi_star == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK((id.avg_input - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <
        1e-4);
  CHECK(id.converged);

  CapacityResult depol0 = chi_star(depolarizing(0.0));
  CHECK(depol0.chi_star == doctest::Approx(0.0).epsilon(1e-8));

  double h34 = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CapacityResult half = chi_star(depolarizing(0.5));
  CHECK(half.chi_star ==
        doctest::Approx(std::log(2.0) - h34).epsilon(1e-4));
  CHECK(half.chi_star == doctest::Approx(0.1308).epsilon(1e-3));
}

TEST_CASE("chi_star result invariants") {
  Rng rng(3);
  Channel phi = random_cptp(2, 2, 2, rng);
  CapacityResult r = chi_star(phi);
  CHECK(r.chi_star >= -1e-10);
  CHECK(r.chi_star <= std::log(2.0) + 1e-10);
  CHECK((r.avg_output - phi.apply(r.avg_input)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.chi_star <= r.chi_star + r.duality_gap + 1e-5);  // sandwich
}

TEST_CASE("certify_capacity") {
  CapacityCertificate id = certify_capacity(
      Channel::identity(2), Matrix::Identity(2, 2) / 2.0, std::log(2.0));
  CHECK(id.conclusive);
  CHECK(id.radius == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(std::abs(id.gap) < 1e-6);

  // Perturbing rho away from rho* strictly increases the radius.
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 0) = 0.7;
  skew(1, 1) = 0.3;
  CapacityCertificate off = certify_capacity(Channel::identity(2), skew,
                                             std::log(2.0));
  CHECK(off.gap > 1e-3);

  CapacityCertificate deph = certify_capacity(
      dephasing_qc(), Matrix::Identity(2, 2) / 2.0, std::log(2.0));
  CHECK(deph.radius == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("chi_star_unital_qubit shortcut") {
  CHECK(chi_star_unital_qubit(Channel::identity(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(chi_star_unital_qubit(depolarizing(0.0)) ==
        doctest::Approx(0.0).epsilon(1e-10));
  double h34 = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(chi_star_unital_qubit(depolarizing(0.5)) ==
        doctest::Approx(std::log(2.0) - h34).epsilon(1e-8));

  QubitAffineParams shifted;
  shifted.lambda = {0.4, 0.4, 0.4};
  shifted.t = {0.0, 0.0, 0.2};
  CHECK_THROWS_AS(chi_star_unital_qubit(Channel::qubit_affine(shifted)),
                  std::invalid_argument);
}

TEST_CASE("unital qubit chi_star matches the shortcut") {
  Rng rng(5);
  for (int i = 0; i < 4; ++i) {
    Channel phi = Channel::qubit_affine(random_qubit_affine(rng, true));
    CapacityResult r = chi_star(phi);
    CHECK(std::abs(r.chi_star - chi_star_unital_qubit(phi)) <= 1e-4);
  }
}

TEST_CASE("superadditivity with product ensembles") {
  Rng rng(7);
  Channel om = Channel::qubit_affine(random_qubit_affine(rng, true));
  Channel ph = dephasing_qc();
  CapacityResult a = chi_star(om);
  CapacityResult b = chi_star(ph);

  Ensemble product;
  for (std::size_t i = 0; i < a.ensemble.probs.size(); ++i) {
    for (std::size_t j = 0; j < b.ensemble.probs.size(); ++j) {
      double pr = a.ensemble.probs[i] * b.ensemble.probs[j];
      if (pr < 1e-6) continue;
      product.probs.push_back(pr);
      product.states.push_back(
          tensor(a.ensemble.states[i], b.ensemble.states[j]));
    }
  }
  double z = 0.0;
  for (double pr : product.probs) z += pr;
  for (double& pr : product.probs) pr /= z;

  Channel joint = tensor_channels(om, ph);
  double chi_product = holevo_chi(joint, product);
  CHECK(chi_product >= a.chi_star + b.chi_star - 2e-3);
}

TEST_CASE("optimal average output is reproducible across seeds") {
  Rng rng(11);
  Channel phi = Channel::qubit_affine(random_qubit_affine(rng, false));
  CapacityOptions o1;
  o1.seed = 123;
  CapacityOptions o2;
  o2.seed = 987654321;
  Matrix out1 = chi_star(phi, o1).avg_output;
  Matrix out2 = chi_star(phi, o2).avg_output;
  CHECK(schatten_norm(out1 - out2, 1.0) < 1e-4);
}

TEST_CASE("CQ channel: basis-state ensemble attains chi_star") {
  Rng rng(13);
  Channel cq = random_cq(2, 2, rng);
  CapacityResult free_opt = chi_star(cq);

  const auto& form = std::get<CqForm>(cq.form());
  Ensemble basis_seed;
  for (const auto& b : form.basis) {
    basis_seed.states.push_back(b * b.adjoint());
    basis_seed.probs.push_back(1.0 / form.basis.size());
  }
  CapacityOptions opts;
  opts.init_ensemble = basis_seed;
  CapacityResult seeded = chi_star(cq, opts);
  CHECK(std::abs(free_opt.chi_star - seeded.chi_star) <= 1e-6);
}
