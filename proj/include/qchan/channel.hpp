#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qchan/matcore.hpp"

namespace qchan {

// Bloch-picture parameters of the canonical diagonal qubit map:
// Bloch vector w maps to (l1 w1 + t1, l2 w2 + t2, l3 w3 + t3).
struct QubitAffineParams {
  Eigen::Vector3d lambda{1.0, 1.0, 1.0};
  Eigen::Vector3d t{0.0, 0.0, 0.0};

  bool unital(double tol = 1e-12) const {
    return t.cwiseAbs().maxCoeff() <= tol;
  }
};

struct KrausForm {
  std::vector<Matrix> ops;
};

// Measure in an orthonormal basis, emit prescribed output states.
struct CqForm {
  std::vector<Vector> basis;
  std::vector<Matrix> outputs;
};

// Apply a POVM, emit orthonormal basis states (outputs always diagonal).
struct QcForm {
  std::vector<Matrix> povm;
  std::vector<Vector> basis;
};

class Channel;

struct TensorForm {
  std::shared_ptr<const Channel> first;
  std::shared_ptr<const Channel> second;
};

struct CptpReport {
  double min_choi_eigenvalue = 0.0;
  double tp_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Immutable quantum channel in one of five forms. Construction validates
// shapes and the form-specific trace-preservation data; complete positivity
// is certified separately by is_cptp (QubitAffineParams outside the CP
// region are representable on purpose, so the certification can fail).
class Channel {
 public:
  using Form =
      std::variant<KrausForm, CqForm, QcForm, QubitAffineParams, TensorForm>;

  static Channel kraus(std::vector<Matrix> ops);
  static Channel cq(std::vector<Vector> basis, std::vector<Matrix> outputs);
  static Channel qc(std::vector<Matrix> povm, std::vector<Vector> basis);
  static Channel qubit_affine(const QubitAffineParams& params);
  static Channel identity(int dim);

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const Form& form() const { return form_; }

  bool is_cq() const { return std::holds_alternative<CqForm>(form_); }
  bool is_qc() const { return std::holds_alternative<QcForm>(form_); }
  bool is_tensor() const { return std::holds_alternative<TensorForm>(form_); }
  const QubitAffineParams* affine_params() const {
    return std::get_if<QubitAffineParams>(&form_);
  }

  // Linear action on an arbitrary d_in x d_in matrix.
  Matrix apply(const Matrix& rho) const;

  // Hilbert-Schmidt adjoint, Sum K* A K. Needs a Kraus representation.
  Matrix apply_adjoint(const Matrix& a) const;

  // Kraus operators; extracted once from the Choi eigendecomposition
  // (eigenvalue cutoff 1e-12) for non-Kraus forms, cached thereafter.
  const std::vector<Matrix>& kraus_ops() const;

  // Maps the maximally mixed state to itself within tol.
  bool is_unital(double tol = 1e-12) const;

  std::string form_name() const;

 private:
  Channel(Form form, int d_in, int d_out);

  struct KrausCache {
    std::once_flag flag;
    std::vector<Matrix> ops;
  };

  Form form_;
  int d_in_ = 0;
  int d_out_ = 0;
  std::shared_ptr<KrausCache> kraus_cache_;

  friend Channel tensor_channels(const Channel&, const Channel&);
};

// Kraus set {A_i (x) B_j}; acts as omega on the slow factor, phi on the fast.
Channel tensor_channels(const Channel& omega, const Channel& phi);

// (I (x) Phi)(|Omega><Omega|) with the normalized maximally entangled vector
// on C^{d_in} (x) C^{d_in}; trace 1. PSD iff the channel is completely
// positive.
Matrix choi(const Channel& phi);

// Reports min Choi eigenvalue and the trace-preservation residual
// ||d_in Tr_out(choi) - I||_max; passes iff both are within tol.
CptpReport is_cptp(const Channel& phi, double tol);

// True iff for every strict ordering |l_i| < |l_j| < |l_k| the translation
// components of the two smaller axes satisfy t_i t_j = 0 (within tol).
// Any two axes of equal length lift the restriction.
bool satisfies_translation_condition(const QubitAffineParams& params,
                                     double tol = 1e-12);

struct CanonicalizeResult {
  QubitAffineParams params;
  std::vector<std::string> transforms;  // applied symmetry operations, in order
};

// Coordinate permutations, pairwise sign flips and (for an equal-|lambda|
// pair) a Bloch rotation about the remaining axis, reaching
// t1 >= 0, t2 >= 0, l1 >= l2 >= 0; additionally t2 = 0 whenever the
// translation condition holds. Every logged transform preserves nu_p.
CanonicalizeResult canonicalize_qubit(const QubitAffineParams& params);

// t2 = 0, t1 >= 0, l1 >= l2 >= 0 (the normalization the block
// decomposition requires).
bool is_canonical_qubit(const QubitAffineParams& params, double tol = 1e-12);

// Pauli matrices and Bloch helpers.
Matrix pauli(int i);  // i in {1,2,3}
Matrix bloch_state(const Eigen::Vector3d& w);  // (I + w.sigma)/2

// Seeded random channel factories.
Channel random_cptp(int d_in, int d_out, int kraus_rank, Rng& rng);
// Random measurement basis (Haar) with random density outputs on C^d_out.
Channel random_cq(int d_in, int d_out, Rng& rng);
// Random full-rank POVM (symmetrized PSD draws) with the canonical basis.
Channel random_qc(int d_in, int n_outcomes, Rng& rng);
QubitAffineParams random_qubit_affine(Rng& rng, bool unital = false);
// Random params satisfying the translation condition: unital, or a single
// nonzero translation component.
QubitAffineParams random_translation_condition_params(Rng& rng, bool unital);

// JSON channel spec: {"form": "kraus"|"cq"|"qc"|"qubit_affine"|"tensor", ...}
// with complex entries as [re, im] pairs.
nlohmann::json channel_to_json(const Channel& phi);
Channel channel_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace qchan
