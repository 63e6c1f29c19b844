#include "qchan/matcore.hpp"

#include <cmath>
#include <stdexcept>

namespace qchan {

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_density(const Matrix& rho) {
  if (!is_hermitian(rho, kHermitianTol)) {
    throw std::domain_error("not a state: matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-10) {
    throw std::domain_error("not a state: trace differs from 1");
  }
  if (min_eigenvalue(rho) < -kStateEigTol) {
    throw std::domain_error("not a state: negative eigenvalue");
  }
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const Matrix& a) {
  return hermitian_eigenvalues(a).minCoeff();
}

double schatten_norm(const Matrix& a, double p) {
  return std::pow(schatten_norm_pow(a, p), 1.0 / p);
}

double schatten_norm_pow(const Matrix& a, double p) {
  if (p < 1.0) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (!a.allFinite()) {
    throw std::invalid_argument("schatten_norm: non-finite entries");
  }
  double sum = 0.0;
  if (is_hermitian(a)) {
    Eigen::VectorXd e = hermitian_eigenvalues(a);
    for (int i = 0; i < e.size(); ++i) sum += std::pow(std::abs(e[i]), p);
  } else {
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    for (int i = 0; i < s.size(); ++i) sum += std::pow(s[i], p);
  }
  return sum;
}

double von_neumann_entropy(const Matrix& rho) {
  require_density(rho);
  Eigen::VectorXd e = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    double v = e[i] < 0.0 ? 0.0 : e[i];  // clip [-1e-10, 0) drift
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

double relative_entropy(const Matrix& omega, const Matrix& rho) {
  if (omega.rows() != rho.rows() || omega.cols() != rho.cols()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  require_density(omega);
  require_density(rho);

  Eigen::SelfAdjointEigenSolver<Matrix> er(rho);
  const Eigen::VectorXd re = er.eigenvalues();
  const Matrix& ru = er.eigenvectors();

  // Mass of omega outside the support of rho decides the +infinity branch.
  double off_support = 0.0;
  double tr_omega_log_rho = 0.0;
  for (int k = 0; k < re.size(); ++k) {
    double diag = std::max(0.0, (ru.col(k).adjoint() * omega * ru.col(k))(0, 0).real());
    if (re[k] <= kSupportTol) {
      off_support += diag;
    } else {
      tr_omega_log_rho += diag * std::log(re[k]);
    }
  }
  if (off_support > kSupportTol) return kInfinity;

  Eigen::VectorXd oe = hermitian_eigenvalues(omega);
  double tr_omega_log_omega = 0.0;
  for (int i = 0; i < oe.size(); ++i) {
    double v = oe[i] < 0.0 ? 0.0 : oe[i];
    if (v > 0.0) tr_omega_log_omega += v * std::log(v);
  }
  return tr_omega_log_omega - tr_omega_log_rho;
}

Matrix partial_trace(const Matrix& m, int d1, int d2, bool keep_first) {
  if (d1 < 1 || d2 < 1 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  if (keep_first) {
    Matrix out = Matrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int a = 0; a < d2; ++a) out(i, j) += m(i * d2 + a, j * d2 + a);
    return out;
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (int a = 0; a < d2; ++a)
    for (int b = 0; b < d2; ++b)
      for (int i = 0; i < d1; ++i) out(a, b) += m(i * d2 + a, i * d2 + b);
  return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double norm_derivative_at_one(const Matrix& rho, double h) {
  if (!(h > 0.0) || h > 1e-3) {
    throw std::invalid_argument("norm_derivative_at_one: need 0 < h <= 1e-3");
  }
  require_density(rho);
  return (schatten_norm(rho, 1.0 + h) - 1.0) / h;
}

Matrix random_gaussian(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return g;
}

Vector random_unit_vector(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(rng.gaussian(), rng.gaussian());
  return v / v.norm();
}

Matrix random_pure(int dim, Rng& rng) {
  Vector v = random_unit_vector(dim, rng);
  return v * v.adjoint();
}

Matrix random_psd(int dim, Rng& rng) {
  Matrix g = random_gaussian(dim, dim, rng);
  return g * g.adjoint();
}

Matrix random_density(int dim, Rng& rng) {
  Matrix w = random_psd(dim, rng);
  return w / w.trace().real();
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Vector d = qr.matrixQR().diagonal();
  for (int i = 0; i < dim; ++i) {
    Complex z = d[i];
    q.col(i) *= (std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0, 0.0));
  }
  return q;
}

Matrix psd_sqrt(const Matrix& a) {
  return hermitian_function(
      a, [](double e) { return e > 0.0 ? std::sqrt(e) : 0.0; });
}

}  // namespace qchan
