#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pherm/branches.hpp"
#include "pherm/matfun.hpp"

namespace pherm {

struct Residuals {
  double reconstruction = 0.0;  // max ||A - U D U*||_F / max ||A||_F
  double para_unitarity = 0.0;  // max ||U U* - I||_F (worst factor)
  double realness = 0.0;        // max |Im D_ii|
};

struct EvdOptions {
  int grid = 0;            // nodes per base period 2*pi*den(A); 0 = from the bandwidth
  int max_grid = 1 << 14;  // the grid is doubled up to this size on failure
  double tol = 1e-8;       // reconstruction residual target
  int max_period = 0;      // bound on N; 0 = landau(n) * den(A)
  double truncation = kTruncationTol;
  ContinuationOptions continuation;
};

struct EvdResult {
  LaurentMatrix U;
  LaurentMatrix D;
  int N = 1;
  // Permutation of the columns of U under theta -> theta + 2*pi*den(A):
  // D_ii(theta + 2*pi*den(A)) = D_{sigma(i) sigma(i)}(theta).
  std::vector<int> sigma;
  std::vector<std::vector<int>> orbits;
  std::vector<int> alpha;
  Residuals residuals;
  int grid = 0;  // working nodes per base period
};

/// Analytic eigendecomposition A = U D U^P of a para-Hermitian A.
EvdResult analytic_evd(const LaurentMatrix& a, const EvdOptions& opts = {});

/// Wraparound correction for a sampled frame over one period. `frames` holds
/// count + 1 samples, the last taken one full period after the first. The
/// mismatch Omega = F_0^* F_count is diagonalized as E exp(i Phi) E^* and the
/// frames are multiplied by E exp(-i Phi j / count) E^*, which makes them
/// periodic without changing the period.
struct GaugeResult {
  std::vector<Eigen::MatrixXcd> frames;  // count samples
  Eigen::MatrixXcd wrap;                 // Omega
  Eigen::VectorXd phases;                // Phi, in (-pi, pi]
};
GaugeResult gauge_fix(std::span<const Eigen::MatrixXcd> frames, double tol = 1e-8);

/// Extends a para-isometry V (n x r, V^P V = I) to a para-unitary n x n
/// matrix whose first r columns are V.
LaurentMatrix complete_para_unitary(const LaurentMatrix& v, int max_grid = 1 << 14);

/// Grid size for residual checks of factors with the given bandwidth (in
/// units of their common root).
int verification_grid_size(int bandwidth);

/// Residuals of A = U S V^P on the verification grid (S may be rectangular).
Residuals factor_residuals(const LaurentMatrix& a, const LaurentMatrix& u, const LaurentMatrix& s,
                           const LaurentMatrix& v);
inline Residuals evd_residuals(const LaurentMatrix& a, const LaurentMatrix& u, const LaurentMatrix& d) {
  return factor_residuals(a, u, d, u);
}

/// Recovers every entry of a sampled matrix function over one period
/// 2*pi*den, judging truncation and aliasing against the whole matrix.
LaurentMatrix matrix_from_samples(std::span<const Eigen::MatrixXcd> samples, int den, double theta_start,
                                  double shift, double tol = kTruncationTol);

namespace detail {

/// Sampled, gauge-fixed eigenvector frames of one group orbit G_1 -> ... -> G_p
/// over p base periods, with the eigenvalue of G_1.
struct OrbitSamples {
  int period = 1;  // p
  int q = 1;       // multiplicity of each group
  std::vector<Eigen::MatrixXcd> frames;  // p*K samples, n x q
  std::vector<double> mu;                // p*K samples
  double lead_value = 0.0;               // mu at theta = 0+
};

struct EigenSamples {
  int den = 1;  // den(A)
  int K = 0;
  double theta_start = 0.0;
  double shift = 0.0;
  std::vector<OrbitSamples> orbits;  // sorted by lead_value, descending
  BranchSet branches;
};

/// Continuation, permutation detection, chaining and gauge fixing on a grid
/// of K nodes per base period.
EigenSamples sample_eigenstructure(const LaurentMatrix& a, int K, const ContinuationOptions& opts);

}  // namespace detail

}  // namespace pherm
