#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pherm/matfun.hpp"

namespace pherm {

struct PointwiseEvd {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // orthonormal columns
};

/// Dense Hermitian eigensolver. Throws NotHermitian when
/// ||H - H*|| > 1e-10 ||H||.
PointwiseEvd pointwise_evd(const Eigen::MatrixXcd& h);

struct ContinuationOptions {
  /// Eigenvalues closer than gap_tol * (spectral scale) form a cluster whose
  /// basis is resolved by the derivative and, if still degenerate, by
  /// Procrustes alignment with the previous node.
  double gap_tol = 1e-8;
  /// Assignment confidence below which a step is bisected.
  double refine_overlap = 0.9;
  /// Assignment confidence below which continuation fails.
  double min_overlap = 0.5;
  int refine_rounds = 2;
};

/// Continued eigenvalue/eigenvector curves over an equispaced grid
/// theta_j = theta_start + T*(j + shift)/K, j < K*periods, with base period
/// T = 2*pi*den.
struct BranchSet {
  int n = 0;
  int den = 1;
  int K = 0;
  int periods = 0;
  double theta_start = 0.0;
  double shift = 0.0;
  std::vector<double> thetas;
  Eigen::MatrixXd mu;                   // mu(branch, node)
  std::vector<Eigen::MatrixXcd> vectors; // per node; column b is branch b
  /// Classes of branches that are the same function (identically coincident).
  std::vector<std::vector<int>> groups;
  double scale = 0.0;  // largest |eigenvalue| over the grid

  // Filled by detect_permutation.
  std::vector<int> sigma;  // mu_i(theta + T) = mu_{sigma(i)}(theta)
  std::vector<std::vector<int>> orbits;
  std::vector<int> alpha;  // orbit length of each branch
  int L = 1;               // order of sigma

  // Diagnostics.
  double min_confidence = 1.0;
  int refined_steps = 0;

  double period() const noexcept { return 2.0 * kPi * den; }
  int group_of(int branch) const;
};

/// Continues branches of a para-Hermitian A over `periods` base periods,
/// K nodes per period, shifted by half a node so that theta = +-pi*den and
/// theta = 0 are never nodes.
BranchSet continue_branches(const LaurentMatrix& a, int K, int periods = 2,
                            const ContinuationOptions& opts = {});

/// Continues branches over the given samples in order. Without access to
/// the matrix function there is no derivative splitting and no refinement.
BranchSet continue_branches(const GridSamples& samples, const ContinuationOptions& opts = {});

struct PermutationInfo {
  std::vector<int> sigma;
  std::vector<std::vector<int>> orbits;
  std::vector<int> alpha;
  int L = 1;
};

/// Finds sigma with mu_i(theta + T) = mu_{sigma(i)}(theta) (within 1e-8 of the
/// spectral scale) and splits its cycles so that each orbit length equals the
/// minimal period multiplier of its branches. Requires periods >= 2.
/// Throws PeriodUndetected if no permutation matches or L > max_period
/// (max_period <= 0 disables that bound).
PermutationInfo detect_permutation(BranchSet& b, int max_period = 0);

/// Cycle splitting: given any valid sigma and same[i][j] == true when branches
/// i and j are the same function, returns a permutation whose orbit lengths are
/// the minimal periods.
std::vector<int> refine_permutation(const std::vector<int>& sigma,
                                    const std::vector<std::vector<bool>>& same);

std::vector<std::vector<int>> permutation_cycles(const std::vector<int>& sigma);

/// Landau's function: max over partitions of n of lcm(parts). 1 <= n <= 20.
long landau(int n);

/// Maximum-weight perfect matching on a square weight matrix; returns the
/// column assigned to each row.
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights);

}  // namespace pherm
