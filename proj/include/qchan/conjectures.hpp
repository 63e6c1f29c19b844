#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qchan/capacity.hpp"
#include "qchan/channel.hpp"
#include "qchan/purity.hpp"

namespace qchan {

// Per-instance verification record. For one-sided inequalities pass means
// gap >= -tolerance; identity checks additionally require gap <= tolerance.
// An inconclusive report never passes silently: it flags optimizer
// non-convergence or a degenerate instance.
struct CheckReport {
  std::string check_name;
  std::uint64_t instance_seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  bool pass = false;
  bool inconclusive = false;
  std::string diagnostics;
};

// Intermediates of the 2x2-block analysis of (Phi (x) I)(M) for a canonical
// qubit map: corner blocks of M, output blocks R_ij, scalar coefficients
// c_±±, the reduced 2x2 witness m' and its entries' images r_ij.
struct BlockDecomposition {
  Matrix X, Y, Z, W;          // M = [[X, Y], [Y*, Z]], W = (X+Z)/2
  std::array<double, 4> c{};  // c_pp, c_mp, c_pm, c_mm
  Matrix R11, R12, R21, R22;
  Eigen::Matrix2d m_prime;    // [[x', y'], [y', z']]
  double r11 = 0.0, r12 = 0.0, r22 = 0.0;
  std::vector<CheckReport> sub_reports;  // block_a_norms, block_b_witness,
                                         // block_c_expansion
};

// Random 2K x 2K PSD matrix with prescribed corner blocks: PSD X, Z and a
// contraction R give Y = sqrt(X) R sqrt(Z). Mixes interior contractions
// (scaled Gaussian) with boundary ones (unitaries and their convex mixes),
// since equality cases live on the boundary. Trace-normalized; regenerates
// the rare draw with a near-singular corner trace.
Matrix random_block_psd(int K, Rng& rng);

// || (Phi (x) I)(M) ||_p <= nu_p(Phi) (||X||_p + ||Z||_p) for a qubit
// channel acting on the slow factor.
CheckReport check_conjecture1(const Channel& phi, const Matrix& m, double p,
                              std::uint64_t instance_seed = 0,
                              const PurityOptions& opts = {});

// S((Phi (x) I)(M)) >= S_min(Phi) + TrX S(xi) + TrZ S(zeta) for trace-one
// PSD M, with xi = X/TrX, zeta = Z/TrZ.
CheckReport check_entropy_bound(const Channel& phi, const Matrix& m,
                                std::uint64_t instance_seed = 0,
                                const PurityOptions& opts = {});

// ||[[X, l Y], [l Y*, X]]||_p <= nu_p(depolarizing l) 2 ||X||_p with
// Y = sqrt(X) V sqrt(X). Also verifies the Lieb-Thirring intermediate
// Tr (F^{1/2} G F^{1/2})^p <= Tr F^p G^p and that conjugating
// G = [[I, l V], [l V*, I]] reproduces the spectrum {1+l, 1-l}.
CheckReport check_lieb_ruskai(const Matrix& x, const Matrix& v, double lambda,
                              double p, std::uint64_t instance_seed = 0);

// nu_p(Omega (x) Phi) vs nu_p(Omega) nu_p(Phi). The lower-bound direction
// (joint >= product) is demanded always; the equality direction only when a
// proved case applies (CQ/QC factor, single-Kraus factor, qubit factor with
// p = 2, or translation-condition qubit factor with integer p).
CheckReport check_multiplicativity(const Channel& omega, const Channel& phi,
                                   double p, std::uint64_t instance_seed = 0,
                                   const PurityOptions& opts = {});

// {chi* additivity, S_min additivity} as a pair of reports. Superadditivity
// of chi* and subadditivity of S_min are demanded always; equality only in
// the proved scopes (CQ/QC factor for chi*, unital qubit factor for S_min).
std::pair<CheckReport, CheckReport> check_additivity(
    const Channel& omega, const Channel& phi, std::uint64_t instance_seed = 0,
    const CapacityOptions& opts = {});

// The QC relative-entropy identity: with theta the second marginal of tau
// and tau_b the conditional states under the POVM of the QC channel Phi,
//   S((Omega (x) Phi)(tau) | rho_Om (x) rho_Ph)
//     = sum_b Tr(theta X_b) S(Omega(tau_b) | rho_Om) + S(Phi(theta) | rho_Ph)
// where the reference states are the optimal average outputs of the factors.
CheckReport check_qc_identity(const Channel& omega, const Channel& phi,
                              const Matrix& tau,
                              std::uint64_t instance_seed = 0,
                              const CapacityOptions& opts = {});

// Full block analysis for integer p. Sub-reports:
//   (a) ||R_ij||_p <= r_ij for the three independent blocks,
//   (b) Tr |(Phi (x) I)(M)|^p <= Tr |Phi(m')|^p,
//   (c) the product-basis trace expansion over 2^p cyclic block sequences
//       reproduces Tr |(Phi (x) I)(M)|^p to 1e-10 (p in {2,3,4}).
// Requires Phi in canonical form (t2 = 0, t1 >= 0, l1 >= l2 >= 0);
// otherwise throws, directing the caller to canonicalize_qubit.
BlockDecomposition block_decompose(const Matrix& m, const Channel& phi, int p,
                                   std::uint64_t instance_seed = 0);

}  // namespace qchan
