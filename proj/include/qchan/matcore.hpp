#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>

#include "qchan/rng.hpp"

// Dense Hermitian linear algebra on complex matrices: Schatten norms,
// entropies, tensor products, partial traces, seeded random instances.
//
// Tensor layout convention (fixed once, used everywhere):
//
//   tensor(A, B) indexes the product space with the SECOND factor fastest:
//       (A (x) B)[(i,a),(j,b)] = A(i,j) * B(a,b),  row index = i*dim(B)+a.
//
//   Hence for a matrix M on C^2 (x) C^K the four contiguous K x K corner
//   blocks are literal sub-blocks:
//
//       M = [ X  Y ]      X = M(0:K, 0:K),   Y = M(0:K, K:2K)
//           [ Y* Z ]      Z = M(K:2K, K:2K)
//
//   and partial_trace(M, 2, K, /*keep_first=*/true) is the 2 x 2 matrix
//   [[Tr X, Tr Y], [Tr Y*, Tr Z]].

namespace qchan {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateEigTol = 1e-10;
inline constexpr double kSupportTol = 1e-10;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

bool is_hermitian(const Matrix& a, double tol = kHermitianTol);

// Throws std::domain_error unless rho is Hermitian, PSD within kStateEigTol
// and unit trace within 1e-10.
void require_density(const Matrix& rho);

// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& a);

// (Tr |A|^p)^(1/p). Uses |eig|^p for Hermitian input, singular values
// otherwise. Throws std::invalid_argument for p < 1 or non-finite entries.
double schatten_norm(const Matrix& a, double p);

// Tr |A|^p without the root.
double schatten_norm_pow(const Matrix& a, double p);

// -Tr rho ln rho in nats, 0 ln 0 = 0. Eigenvalues in [-1e-10, 0) are
// clipped to zero; anything below throws std::domain_error.
double von_neumann_entropy(const Matrix& rho);

// Tr omega (ln omega - ln rho); +infinity when the support of omega leaks
// outside the support of rho (threshold kSupportTol on rho's spectrum).
double relative_entropy(const Matrix& omega, const Matrix& rho);

Matrix partial_trace(const Matrix& m, int d1, int d2, bool keep_first);

// Kronecker product, second factor fastest (see layout note above).
Matrix tensor(const Matrix& a, const Matrix& b);

// (||rho||_{1+h} - 1) / h; approaches -S(rho) as h -> 0.
// Requires 0 < h <= 1e-3.
double norm_derivative_at_one(const Matrix& rho, double h);

// Seeded random instances. All draws are fully determined by the Rng state.
Matrix random_gaussian(int rows, int cols, Rng& rng);
Vector random_unit_vector(int dim, Rng& rng);
Matrix random_pure(int dim, Rng& rng);      // rank-one projector
Matrix random_psd(int dim, Rng& rng);       // G G*
Matrix random_density(int dim, Rng& rng);   // G G* / Tr
Matrix random_unitary(int dim, Rng& rng);   // Haar (QR, phase-fixed diagonal)

// Hermitian square root of a PSD matrix (negative drift clipped to zero).
Matrix psd_sqrt(const Matrix& a);

// f(A) for Hermitian A through its eigendecomposition.
template <typename F>
Matrix hermitian_function(const Matrix& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  Eigen::VectorXd e = es.eigenvalues();
  for (int i = 0; i < e.size(); ++i) e[i] = f(e[i]);
  return es.eigenvectors() * e.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace qchan
