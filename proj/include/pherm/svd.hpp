#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pherm/evd.hpp"
#include "pherm/matfun.hpp"

namespace pherm {

/// H = [0 A; A^P 0], (m+n) x (m+n) and para-Hermitian.
LaurentMatrix doubled_embedding(const LaurentMatrix& a);

struct PmPairing {
  LaurentMatrix B;  // m x r, top blocks of the +lambda eigenvectors
  LaurentMatrix C;  // n x r, bottom blocks
  std::vector<FracLaurent> lambda;
  int r = 0;
};

/// Splits the nonzero eigen-branches of H into (lambda, -lambda) classes and
/// returns B, C (unscaled) and Lambda from the + side. The + side of a pair is
/// the one that is positive just after theta = 0. A branch counts as zero when
/// its maximum modulus is below zero_rel times the largest branch modulus.
/// Throws PairingError when a class has no mirror or the mirror eigenvectors
/// are not [b; -c].
PmPairing pair_pm_branches(const EvdResult& h, int m, double zero_rel = 1e-10);

struct SvdResult {
  LaurentMatrix U;  // m x m
  LaurentMatrix S;  // m x n, real diagonal on the circle (signed, unordered)
  LaurentMatrix V;  // n x n
  int N = 1;
  int rank = 0;
  Residuals residuals;
  int grid = 0;
};

/// A = U S V^P with U, V para-unitary and S diagonal and real on the circle.
SvdResult analytic_svd(const LaurentMatrix& a, const EvdOptions& opts = {});

/// Pointwise singular values (descending) at each theta.
std::vector<Eigen::VectorXd> pointwise_singular_values(const LaurentMatrix& a, std::span<const double> thetas);

/// Evidence that no SVD with real diagonal exists at the input's own
/// denominator: the pointwise singular value curves are not analytic there
/// (their Fourier series do not decay), and the analytic signed values are not
/// periodic over 2*pi*den(A).
struct DenObstruction {
  int base_den = 1;
  bool pointwise_analytic = true;  // every sorted singular value curve recovered at base_den
  double edge_ratio = 0.0;         // worst band-edge / max coefficient ratio of those curves
  bool signed_periodic = true;     // every S_ii(theta + 2 pi base_den) == S_ii(theta)
  double shift_mismatch = 0.0;     // max |S_ii(theta + 2 pi base_den) - S_ii(theta)|
  bool obstructed() const noexcept { return !pointwise_analytic && !signed_periodic; }
};
DenObstruction base_den_obstruction(const LaurentMatrix& a, const SvdResult& svd, int K = 256);

}  // namespace pherm
