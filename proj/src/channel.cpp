#include "qchan/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qchan {

namespace {

using json = nlohmann::json;

Matrix affine_apply(const QubitAffineParams& p, const Matrix& a) {
  // Decompose A = a0 I + sum a_i sigma_i (complex coefficients), then use
  // Phi(I) = I + t.sigma and Phi(sigma_i) = l_i sigma_i.
  Complex a0 = a.trace() / 2.0;
  Matrix out = a0 * Matrix::Identity(2, 2);
  for (int i = 1; i <= 3; ++i) {
    Matrix s = pauli(i);
    Complex ai = (a * s).trace() / 2.0;
    out += (p.lambda[i - 1] * ai + a0 * p.t[i - 1]) * s;
  }
  return out;
}

void require_orthonormal(const std::vector<Vector>& basis, int dim) {
  if (static_cast<int>(basis.size()) != dim) {
    throw std::invalid_argument("basis must span the space");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != dim) {
      throw std::invalid_argument("basis vector dimension mismatch");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      Complex ip = basis[j].adjoint() * basis[i];
      double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - Complex(target, 0.0)) > 1e-10) {
        throw std::invalid_argument("basis is not orthonormal");
      }
    }
  }
}

}  // namespace

Matrix pauli(int i) {
  Matrix s(2, 2);
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 1..3");
  }
  return s;
}

Matrix bloch_state(const Eigen::Vector3d& w) {
  Matrix rho = Matrix::Identity(2, 2);
  for (int i = 1; i <= 3; ++i) rho += w[i - 1] * pauli(i);
  return rho / 2.0;
}

Channel::Channel(Form form, int d_in, int d_out)
    : form_(std::move(form)),
      d_in_(d_in),
      d_out_(d_out),
      kraus_cache_(std::make_shared<KrausCache>()) {}

Channel Channel::kraus(std::vector<Matrix> ops) {
  if (ops.empty()) throw std::invalid_argument("kraus: no operators");
  const int d_out = static_cast<int>(ops[0].rows());
  const int d_in = static_cast<int>(ops[0].cols());
  Matrix sum = Matrix::Zero(d_in, d_in);
  for (const auto& k : ops) {
    if (k.rows() != d_out || k.cols() != d_in) {
      throw std::invalid_argument("kraus: inconsistent operator shapes");
    }
    sum += k.adjoint() * k;
  }
  if ((sum - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("kraus: sum K*K differs from identity");
  }
  return Channel(KrausForm{std::move(ops)}, d_in, d_out);
}

Channel Channel::cq(std::vector<Vector> basis, std::vector<Matrix> outputs) {
  if (basis.empty() || basis.size() != outputs.size()) {
    throw std::invalid_argument("cq: basis/outputs size mismatch");
  }
  const int d_in = static_cast<int>(basis[0].size());
  require_orthonormal(basis, d_in);
  const int d_out = static_cast<int>(outputs[0].rows());
  for (const auto& q : outputs) {
    if (q.rows() != d_out || q.cols() != d_out) {
      throw std::invalid_argument("cq: output dimension mismatch");
    }
    require_density(q);
  }
  return Channel(CqForm{std::move(basis), std::move(outputs)}, d_in, d_out);
}

Channel Channel::qc(std::vector<Matrix> povm, std::vector<Vector> basis) {
  if (povm.empty() || povm.size() != basis.size()) {
    throw std::invalid_argument("qc: povm/basis size mismatch");
  }
  const int d_in = static_cast<int>(povm[0].rows());
  Matrix sum = Matrix::Zero(d_in, d_in);
  for (const auto& x : povm) {
    if (x.rows() != d_in || x.cols() != d_in || !is_hermitian(x)) {
      throw std::invalid_argument("qc: POVM element not Hermitian");
    }
    if (min_eigenvalue(x) < -1e-10) {
      throw std::invalid_argument("qc: POVM element not PSD");
    }
    sum += x;
  }
  if ((sum - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("qc: POVM completeness violated");
  }
  const int d_out = static_cast<int>(basis[0].size());
  require_orthonormal(basis, d_out);
  return Channel(QcForm{std::move(povm), std::move(basis)}, d_in, d_out);
}

Channel Channel::qubit_affine(const QubitAffineParams& params) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(params.lambda[i]) || !std::isfinite(params.t[i])) {
      throw std::invalid_argument("qubit_affine: non-finite parameter");
    }
    if (std::abs(params.lambda[i]) + std::abs(params.t[i]) > 1.0 + 1e-9) {
      throw std::invalid_argument(
          "qubit_affine: |lambda_i| + |t_i| > 1 maps the Bloch ball outside");
    }
  }
  return Channel(params, 2, 2);
}

Channel Channel::identity(int dim) {
  return Channel(KrausForm{{Matrix::Identity(dim, dim)}}, dim, dim);
}

Matrix Channel::apply(const Matrix& rho) const {
  if (rho.rows() != d_in_ || rho.cols() != d_in_) {
    throw std::invalid_argument("apply: dimension mismatch");
  }
  struct Visitor {
    const Matrix& rho;
    const Channel& ch;
    Matrix operator()(const KrausForm& f) const {
      Matrix out = Matrix::Zero(ch.d_out_, ch.d_out_);
      for (const auto& k : f.ops) out += k * rho * k.adjoint();
      return out;
    }
    Matrix operator()(const CqForm& f) const {
      Matrix out = Matrix::Zero(ch.d_out_, ch.d_out_);
      for (std::size_t b = 0; b < f.basis.size(); ++b) {
        Complex w = f.basis[b].adjoint() * rho * f.basis[b];
        out += w * f.outputs[b];
      }
      return out;
    }
    Matrix operator()(const QcForm& f) const {
      Matrix out = Matrix::Zero(ch.d_out_, ch.d_out_);
      for (std::size_t b = 0; b < f.povm.size(); ++b) {
        Complex w = (rho * f.povm[b]).trace();
        out += w * (f.basis[b] * f.basis[b].adjoint());
      }
      return out;
    }
    Matrix operator()(const QubitAffineParams& p) const {
      return affine_apply(p, rho);
    }
    Matrix operator()(const TensorForm&) const {
      Matrix out = Matrix::Zero(ch.d_out_, ch.d_out_);
      for (const auto& k : ch.kraus_ops()) out += k * rho * k.adjoint();
      return out;
    }
  };
  return std::visit(Visitor{rho, *this}, form_);
}

Matrix Channel::apply_adjoint(const Matrix& a) const {
  if (a.rows() != d_out_ || a.cols() != d_out_) {
    throw std::invalid_argument("apply_adjoint: dimension mismatch");
  }
  Matrix out = Matrix::Zero(d_in_, d_in_);
  for (const auto& k : kraus_ops()) out += k.adjoint() * a * k;
  return out;
}

const std::vector<Matrix>& Channel::kraus_ops() const {
  std::call_once(kraus_cache_->flag, [this] {
    if (const auto* kf = std::get_if<KrausForm>(&form_)) {
      kraus_cache_->ops = kf->ops;
      return;
    }
    if (const auto* tf = std::get_if<TensorForm>(&form_)) {
      for (const auto& a : tf->first->kraus_ops())
        for (const auto& b : tf->second->kraus_ops())
          kraus_cache_->ops.push_back(tensor(a, b));
      return;
    }
    // Extraction from the Choi eigendecomposition, cutoff 1e-12.
    Matrix j = choi(*this) * static_cast<double>(d_in_);
    Eigen::SelfAdjointEigenSolver<Matrix> es((j + j.adjoint()) / 2.0);
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      double e = es.eigenvalues()[k];
      if (e <= 1e-12) continue;
      Vector v = es.eigenvectors().col(k);
      Matrix op(d_out_, d_in_);
      for (int i = 0; i < d_in_; ++i)
        for (int a = 0; a < d_out_; ++a) op(a, i) = std::sqrt(e) * v[i * d_out_ + a];
      kraus_cache_->ops.push_back(std::move(op));
    }
  });
  return kraus_cache_->ops;
}

bool Channel::is_unital(double tol) const {
  if (d_in_ != d_out_) return false;
  Matrix mixed = Matrix::Identity(d_in_, d_in_) / static_cast<double>(d_in_);
  return (apply(mixed) - mixed).cwiseAbs().maxCoeff() <= tol;
}

std::string Channel::form_name() const {
  struct Visitor {
    std::string operator()(const KrausForm&) const { return "kraus"; }
    std::string operator()(const CqForm&) const { return "cq"; }
    std::string operator()(const QcForm&) const { return "qc"; }
    std::string operator()(const QubitAffineParams&) const {
      return "qubit_affine";
    }
    std::string operator()(const TensorForm&) const { return "tensor"; }
  };
  return std::visit(Visitor{}, form_);
}

Channel tensor_channels(const Channel& omega, const Channel& phi) {
  TensorForm tf{std::make_shared<Channel>(omega),
                std::make_shared<Channel>(phi)};
  return Channel(Channel::Form{std::move(tf)}, omega.d_in() * phi.d_in(),
                 omega.d_out() * phi.d_out());
}

Matrix choi(const Channel& phi) {
  const int din = phi.d_in();
  const int dout = phi.d_out();
  Matrix j(din * dout, din * dout);
  Matrix unit = Matrix::Zero(din, din);
  for (int i = 0; i < din; ++i) {
    for (int k = 0; k < din; ++k) {
      unit(i, k) = 1.0;
      j.block(i * dout, k * dout, dout, dout) =
          phi.apply(unit) / static_cast<double>(din);
      unit(i, k) = 0.0;
    }
  }
  return j;
}

CptpReport is_cptp(const Channel& phi, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("is_cptp: tol must be positive");
  Matrix j = choi(phi);
  Matrix jh = (j + j.adjoint()) / 2.0;
  CptpReport r;
  r.tol = tol;
  r.min_choi_eigenvalue = min_eigenvalue(jh);
  Matrix marginal =
      partial_trace(j, phi.d_in(), phi.d_out(), /*keep_first=*/true) *
      static_cast<double>(phi.d_in());
  r.tp_residual =
      (marginal - Matrix::Identity(phi.d_in(), phi.d_in())).cwiseAbs().maxCoeff();
  r.pass = r.min_choi_eigenvalue >= -tol && r.tp_residual <= tol;
  return r;
}

bool satisfies_translation_condition(const QubitAffineParams& p, double tol) {
  const auto& l = p.lambda;
  const auto& t = p.t;
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& q : perms) {
    int i = q[0], j = q[1], k = q[2];
    bool strict = std::abs(l[i]) < std::abs(l[j]) - tol &&
                  std::abs(l[j]) < std::abs(l[k]) - tol;
    if (strict && std::abs(t[i] * t[j]) > tol) return false;
  }
  return true;
}

namespace {

struct ParamEditor {
  QubitAffineParams p;
  std::vector<std::string> log;

  void permute(const std::array<int, 3>& perm) {  // new[k] = old[perm[k]]
    if (perm == std::array<int, 3>{0, 1, 2}) return;
    Eigen::Vector3d l2, t2;
    for (int k = 0; k < 3; ++k) {
      l2[k] = p.lambda[perm[k]];
      t2[k] = p.t[perm[k]];
    }
    p.lambda = l2;
    p.t = t2;
    std::ostringstream os;
    os << "perm(" << perm[0] + 1 << "," << perm[1] + 1 << "," << perm[2] + 1
       << ")";
    log.push_back(os.str());
  }

  void flip_lambda(int i, int j) {  // sigma conjugation in the domain
    p.lambda[i] = -p.lambda[i];
    p.lambda[j] = -p.lambda[j];
    std::ostringstream os;
    os << "flip_lambda(" << i + 1 << "," << j + 1 << ")";
    log.push_back(os.str());
  }

  void flip_t(int i, int j) {  // simultaneous sigma conjugation
    p.t[i] = -p.t[i];
    p.t[j] = -p.t[j];
    std::ostringstream os;
    os << "flip_t(" << i + 1 << "," << j + 1 << ")";
    log.push_back(os.str());
  }

  // Bloch rotation about axis 3 (valid when lambda1 == lambda2): zeroes t2.
  void rotate_axis3() {
    double theta = std::atan2(p.t[1], p.t[0]);
    double r = std::hypot(p.t[0], p.t[1]);
    p.t[0] = r;
    p.t[1] = 0.0;
    std::ostringstream os;
    os << "rotate_axis3(" << theta << ")";
    log.push_back(os.str());
  }

  void fix_lambda_signs() {  // reach lambda1 >= 0, lambda2 >= 0
    if (p.lambda[0] < 0.0 && p.lambda[1] < 0.0) flip_lambda(0, 1);
    else if (p.lambda[0] < 0.0) flip_lambda(0, 2);
    else if (p.lambda[1] < 0.0) flip_lambda(1, 2);
  }

  void fix_t_signs() {  // reach t1 >= 0, t2 >= 0
    if (p.t[0] < 0.0 && p.t[1] < 0.0) flip_t(0, 1);
    else if (p.t[0] < 0.0) flip_t(0, 2);
    else if (p.t[1] < 0.0) flip_t(1, 2);
  }
};

std::array<int, 3> descending_permutation(const Eigen::Vector3d& lambda) {
  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(lambda[a]) > std::abs(lambda[b]);
  });
  return idx;
}

}  // namespace

CanonicalizeResult canonicalize_qubit(const QubitAffineParams& params) {
  constexpr double tol = 1e-12;
  ParamEditor ed{params, {}};
  const bool cond = satisfies_translation_condition(params, tol);

  // Equal-|lambda| pair, if any (exact within tol; near-equal axes are
  // treated as unequal, matching the rotation argument's needs).
  int eq_i = -1, eq_j = -1;
  for (int i = 0; i < 3 && eq_i < 0; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(std::abs(params.lambda[i]) - std::abs(params.lambda[j])) <=
          tol) {
        eq_i = i;
        eq_j = j;
        break;
      }

  auto desc = descending_permutation(ed.p.lambda);
  double t2_after_desc = ed.p.t[desc[1]];

  if (cond && eq_i >= 0 && std::abs(t2_after_desc) > tol) {
    // Bring the equal pair to positions (1,2); the axis-3 rotation then
    // removes t2.
    int third = 3 - eq_i - eq_j;
    ed.permute({eq_i, eq_j, third});
    ed.fix_lambda_signs();
    ed.rotate_axis3();
    ed.fix_t_signs();  // t1 >= 0 already; keeps t2 = 0
    return {ed.p, ed.log};
  }

  ed.permute(desc);
  if (cond && std::abs(ed.p.t[1]) > tol) {
    // Strict ordering: the translation condition forces t2 t3 = 0,
    // so t3 = 0 here and swapping axes 2 and 3 clears t2.
    ed.permute({0, 2, 1});
  }
  ed.fix_lambda_signs();
  ed.fix_t_signs();
  return {ed.p, ed.log};
}

bool is_canonical_qubit(const QubitAffineParams& p, double tol) {
  return std::abs(p.t[1]) <= tol && p.t[0] >= -tol &&
         p.lambda[0] >= p.lambda[1] - tol && p.lambda[1] >= -tol;
}

Channel random_cptp(int d_in, int d_out, int kraus_rank, Rng& rng) {
  if (d_in < 1 || d_out < 1 || kraus_rank < 1) {
    throw std::invalid_argument("random_cptp: bad dimensions");
  }
  // Stinespring isometry: orthonormal columns of a Gaussian matrix.
  Matrix g = random_gaussian(d_out * kraus_rank, d_in, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix v = qr.householderQ() * Matrix::Identity(d_out * kraus_rank, d_in);
  std::vector<Matrix> ops;
  for (int e = 0; e < kraus_rank; ++e) {
    Matrix k(d_out, d_in);
    for (int a = 0; a < d_out; ++a)
      for (int i = 0; i < d_in; ++i) k(a, i) = v(a * kraus_rank + e, i);
    ops.push_back(std::move(k));
  }
  return Channel::kraus(std::move(ops));
}

namespace {

bool affine_cp(const QubitAffineParams& p, double margin) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(p.lambda[i]) + std::abs(p.t[i]) > 1.0 - margin) return false;
  }
  Matrix j = choi(Channel::qubit_affine(p));
  return min_eigenvalue((j + j.adjoint()) / 2.0) >= margin / 4.0;
}

}  // namespace

Channel random_cq(int d_in, int d_out, Rng& rng) {
  Matrix u = random_unitary(d_in, rng);
  std::vector<Vector> basis;
  std::vector<Matrix> outputs;
  for (int b = 0; b < d_in; ++b) {
    basis.push_back(u.col(b));
    outputs.push_back(random_density(d_out, rng));
  }
  return Channel::cq(std::move(basis), std::move(outputs));
}

Channel random_qc(int d_in, int n_outcomes, Rng& rng) {
  if (n_outcomes < 1) throw std::invalid_argument("random_qc: need outcomes");
  std::vector<Matrix> raw;
  Matrix total = Matrix::Zero(d_in, d_in);
  for (int b = 0; b < n_outcomes; ++b) {
    raw.push_back(random_psd(d_in, rng));
    total += raw.back();
  }
  Matrix whiten = hermitian_function(
      total, [](double e) { return 1.0 / std::sqrt(std::max(e, 1e-300)); });
  std::vector<Matrix> povm;
  std::vector<Vector> basis;
  for (int b = 0; b < n_outcomes; ++b) {
    Matrix x = whiten * raw[b] * whiten;
    povm.push_back((x + x.adjoint()) / 2.0);
    Vector e = Vector::Zero(n_outcomes);
    e[b] = 1.0;
    basis.push_back(std::move(e));
  }
  return Channel::qc(std::move(povm), std::move(basis));
}

QubitAffineParams random_qubit_affine(Rng& rng, bool unital) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    QubitAffineParams p;
    for (int i = 0; i < 3; ++i) {
      p.lambda[i] = rng.uniform(-1.0, 1.0);
      p.t[i] = unital ? 0.0 : 0.4 * rng.uniform(-1.0, 1.0);
    }
    if (affine_cp(p, 1e-4)) return p;
  }
  throw std::runtime_error("random_qubit_affine: rejection sampling failed");
}

QubitAffineParams random_translation_condition_params(Rng& rng, bool unital) {
  if (unital) return random_qubit_affine(rng, true);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    QubitAffineParams p = random_qubit_affine(rng, true);
    int axis = static_cast<int>(rng.next_u64() % 3);
    p.t[axis] = 0.4 * rng.uniform(-1.0, 1.0);
    if (affine_cp(p, 1e-4)) return p;
  }
  throw std::runtime_error(
      "random_translation_condition_params: rejection sampling failed");
}

nlohmann::json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix json: expected non-empty array");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) {
      throw std::invalid_argument("matrix json: ragged rows");
    }
    for (int c = 0; c < cols; ++c) {
      const auto& cell = j[i][c];
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument("matrix json: entries must be [re, im]");
      }
      m(i, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

namespace {

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) {
    arr.push_back(json::array({v[i].real(), v[i].imag()}));
  }
  return arr;
}

Vector vector_from_json(const json& j) {
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[i] = Complex(j[i][0].get<double>(), j[i][1].get<double>());
  }
  return v;
}

}  // namespace

nlohmann::json channel_to_json(const Channel& phi) {
  json out;
  out["form"] = phi.form_name();
  struct Visitor {
    json& out;
    void operator()(const KrausForm& f) const {
      json ops = json::array();
      for (const auto& k : f.ops) ops.push_back(matrix_to_json(k));
      out["ops"] = std::move(ops);
    }
    void operator()(const CqForm& f) const {
      json basis = json::array(), outputs = json::array();
      for (const auto& b : f.basis) basis.push_back(vector_to_json(b));
      for (const auto& q : f.outputs) outputs.push_back(matrix_to_json(q));
      out["basis"] = std::move(basis);
      out["outputs"] = std::move(outputs);
    }
    void operator()(const QcForm& f) const {
      json povm = json::array(), basis = json::array();
      for (const auto& x : f.povm) povm.push_back(matrix_to_json(x));
      for (const auto& b : f.basis) basis.push_back(vector_to_json(b));
      out["povm"] = std::move(povm);
      out["basis"] = std::move(basis);
    }
    void operator()(const QubitAffineParams& p) const {
      out["lambda"] = {p.lambda[0], p.lambda[1], p.lambda[2]};
      out["t"] = {p.t[0], p.t[1], p.t[2]};
    }
    void operator()(const TensorForm&) const {}
  };
  std::visit(Visitor{out}, phi.form());
  if (const auto* tf = std::get_if<TensorForm>(&phi.form())) {
    out["first"] = channel_to_json(*tf->first);
    out["second"] = channel_to_json(*tf->second);
  }
  return out;
}

Channel channel_from_json(const nlohmann::json& j) {
  const std::string form = j.at("form").get<std::string>();
  if (form == "kraus") {
    std::vector<Matrix> ops;
    for (const auto& k : j.at("ops")) ops.push_back(matrix_from_json(k));
    return Channel::kraus(std::move(ops));
  }
  if (form == "cq") {
    std::vector<Vector> basis;
    std::vector<Matrix> outputs;
    for (const auto& b : j.at("basis")) basis.push_back(vector_from_json(b));
    for (const auto& q : j.at("outputs")) outputs.push_back(matrix_from_json(q));
    return Channel::cq(std::move(basis), std::move(outputs));
  }
  if (form == "qc") {
    std::vector<Matrix> povm;
    std::vector<Vector> basis;
    for (const auto& x : j.at("povm")) povm.push_back(matrix_from_json(x));
    for (const auto& b : j.at("basis")) basis.push_back(vector_from_json(b));
    return Channel::qc(std::move(povm), std::move(basis));
  }
  if (form == "qubit_affine") {
    QubitAffineParams p;
    for (int i = 0; i < 3; ++i) {
      p.lambda[i] = j.at("lambda").at(i).get<double>();
      p.t[i] = j.at("t").at(i).get<double>();
    }
    return Channel::qubit_affine(p);
  }
  if (form == "tensor") {
    return tensor_channels(channel_from_json(j.at("first")),
                           channel_from_json(j.at("second")));
  }
  throw std::invalid_argument("channel json: unknown form '" + form + "'");
}

}  // namespace qchan
