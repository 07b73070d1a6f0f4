#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pherm/evd.hpp"
#include "pherm/matfun.hpp"

namespace pherm {

/// Fourier and shift matrices of size N:
///   F(i,j) = N^{-1/2} exp(i 2 pi i j / N),  D(theta) = diag(exp(i theta k / N)),
///   P = cyclic shift with D(theta + 2 pi) F = D(theta) F P.
struct FourierShift {
  int N = 1;
  Eigen::MatrixXcd F;
  Eigen::MatrixXcd P;
  Eigen::MatrixXcd D(double theta) const;
};
FourierShift fourier_shift(int N);

/// Pseudo-circulant block of size M: entry (i, j) is phi_{i-j} below and on
/// the diagonal and z^{-1} phi_{M+i-j} above it. All phis have den 1.
struct PseudoCircBlock {
  int M = 1;
  std::vector<FracLaurent> phis;  // phi_0 .. phi_{M-1}

  /// phi_q for -M < q < M; negative indices are z^{-1} phi_{q+M}.
  FracLaurent phi(int q) const;
  LaurentMatrix matrix() const;
};

/// Block of one orbit mu_1..mu_M, mu_k(theta) = mu_1(theta + 2 pi (k-1)):
/// phi_q(theta) = (1/M) e^{i theta q/M} sum_k mu_k(theta) e^{i 2 pi q (k-1)/M}.
/// Throws OrbitError if the shift relation fails by more than 1e-8.
PseudoCircBlock build_block(const std::vector<FracLaurent>& mus);
/// Same, from the first branch only (its period must divide 2 pi M).
PseudoCircBlock build_block(const FracLaurent& mu1, int M);

struct PseudoCircResult {
  LaurentMatrix W;
  std::vector<PseudoCircBlock> blocks;
  LaurentMatrix C;  // block diagonal
  Residuals residuals;
  int grid = 0;
};

/// A = W C W^P with W para-unitary and C block diagonal pseudo-circulant,
/// everything with denominator 1. Requires den(A) = 1.
PseudoCircResult pseudo_circulant_decomposition(const LaurentMatrix& a, const EvdOptions& opts = {});

struct PseudoCircCheck {
  bool ok = false;
  double worst_violation = 0.0;
};
/// Reads phi_q from the first column and checks every entry against the
/// pseudo-circulant pattern, coefficient-wise.
PseudoCircCheck verify_pseudo_circulant(const LaurentMatrix& c, double tol = 1e-10);

}  // namespace pherm
