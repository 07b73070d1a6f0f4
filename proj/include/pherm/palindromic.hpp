#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pherm/evd.hpp"
#include "pherm/matfun.hpp"

namespace pherm {

/// P(z) = sum_{i=0}^{g} P_i z^i with grade g (at least the degree).
/// *-palindromic when P_i = P_{g-i}^*.
struct PalindromicPoly {
  int grade = 0;
  std::vector<Eigen::MatrixXcd> coeffs;  // P_0 .. P_g

  int size() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs[0].rows()); }
  Eigen::MatrixXcd eval(cplx z) const;
  Eigen::MatrixXcd derivative(cplx z) const;
  /// Largest spectral norm of a coefficient.
  double norm() const;

  /// Checks shapes and P_i = P_{g-i}^* within 1e-12 * max(1, norm()).
  /// Throws ShapeError / NotPalindromic.
  void validate() const;
};

PalindromicPoly operator+(const PalindromicPoly& p, const PalindromicPoly& q);

/// Angle of z on the branch interval (tau - 2 pi, tau].
double branch_angle_of(cplx z, double tau = kPi);

/// R(z) = z^{-g/2} P(z) = sum_i P_i z^{(2i - g)/2}; den 2 for odd g, else 1.
/// On theta in (tau - 2 pi, tau] the square root is exp(i theta / 2).
LaurentMatrix to_para_hermitian(const PalindromicPoly& p);

/// All finite eigenvalues of P from the first companion pencil.
/// Throws NotRegular when det P vanishes at every test point.
std::vector<cplx> polynomial_eigenvalues(const PalindromicPoly& p);

struct UnimodularEigenvalue {
  cplx lambda;        // normalized onto the circle
  double theta = 0;   // angle on the branch interval
  int multiplicity = 1;
};

struct UnimodularSpectrum {
  std::vector<UnimodularEigenvalue> eigenvalues;  // excludes the branch point exp(i tau)
  int branch_point_multiplicity = 0;              // eigenvalues at exp(i tau) (-1 by default)
};

/// Finite eigenvalues within tol of the unit circle, clustered (multiple
/// roots split by rounding are averaged), sorted by angle.
UnimodularSpectrum unimodular_eigenvalues(const PalindromicPoly& p, double tol = 1e-6, double tau = kPi);

struct SignEntry {
  int m = 0;        // partial multiplicity
  int eps = 0;      // sign characteristic
  double c = 0.0;   // |leading Taylor coefficient|
  int feature = 0;  // eps * (1 - (-1)^m) / 2
};

struct SignReport {
  cplx lambda;
  double theta0 = 0.0;
  std::vector<SignEntry> entries;  // m nondecreasing
};

struct SignOptions {
  double tau = kPi;  // branch angle of the square root
  int max_order = 6;
  EvdOptions evd;
};

/// Partial multiplicities, sign characteristics and sign features of a
/// unimodular eigenvalue, from the analytic eigenvalues F_i(theta) of R.
SignReport sign_characteristics(const PalindromicPoly& p, cplx lambda, const SignOptions& opts = {});

struct SignSimple {
  double value = 0.0;
  int sign = 0;
};

/// Re(i lambda^{1 - g/2} v^* P'(lambda) v) for a simple unimodular eigenvalue.
/// Throws NotEigenvector, NearDegenerate, MinusOneEigenvalue.
SignSimple sign_simple(const PalindromicPoly& p, cplx lambda, const Eigen::VectorXcd& v, double tau = kPi);

/// Right singular vector of the smallest singular value of P(lambda).
Eigen::VectorXcd null_vector(const PalindromicPoly& p, cplx lambda);

struct PerturbationReport {
  bool moved_off_circle = false;
  std::vector<cplx> new_eigenvalues;
  double max_radial_deviation = 0.0;  // max | |mu| - 1 |
};

/// Eigenvalues of P + dP nearest to the cluster, and whether any left the
/// circle by more than tol.
PerturbationReport perturbation_check(const PalindromicPoly& p, const PalindromicPoly& dp,
                                      const UnimodularEigenvalue& cluster, double tol = 1e-8);

/// All unimodular clusters at once: the eigenvalues of P + dP are assigned to
/// the clusters (by multiplicity) with a minimum total distance matching, so
/// nearby clusters never claim the same perturbed eigenvalue.
std::vector<PerturbationReport> perturbation_track(const PalindromicPoly& p, const PalindromicPoly& dp,
                                                   const UnimodularSpectrum& spectrum, double tol = 1e-8);

}  // namespace pherm
