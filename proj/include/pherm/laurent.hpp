#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pherm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Truncated Laurent series in the fractional variable w = z^{1/N}:
///
///   f(z) = sum_{k=lo}^{hi} a_k z^{k/N}.
///
/// Values are always kept in canonical form: the outermost stored
/// coefficients are nonzero and `den()` is the smallest denominator that
/// can express the support (exact integer gcd). The zero series is stored
/// as den 1, lo = hi = 0, a_0 = 0.
///
/// On the unit circle the series is a 2*pi*N periodic function of theta with
/// w = exp(i theta / N); for theta in (-pi, pi] this is f evaluated with the
/// principal branch of z^{1/N}.
class FracLaurent {
 public:
  FracLaurent();
  FracLaurent(int den, int lo, std::vector<cplx> coeffs);

  static FracLaurent constant(cplx c);
  /// c * z^{k/den}
  static FracLaurent monomial(cplx c, int k, int den = 1);

  int den() const noexcept { return den_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of w^k (zero outside the stored range).
  cplx coeff(int k) const noexcept;
  /// Coefficient of w^k where w = z^{1/den}; `den` must be a multiple of den().
  cplx coeff_at(int k, int den) const noexcept;

  bool is_zero() const noexcept;
  double max_abs() const noexcept;
  /// max |k| / den, the largest |exponent| of z.
  double degree_span() const noexcept;
  /// Largest |k| after lifting to denominator `den` (a multiple of den()).
  int bandwidth_at(int den) const noexcept;

  /// Drops coefficients with |a_k| <= rel_tol * max|a_k| and re-canonicalizes.
  FracLaurent truncated(double rel_tol) const;

  friend bool operator==(const FracLaurent&, const FracLaurent&) = default;

 private:
  void canonicalize();

  int den_ = 1;
  int lo_ = 0;
  std::vector<cplx> coeffs_{cplx{0.0, 0.0}};
};

/// Reduces theta into (-pi*den, pi*den].
double reduce_angle(double theta, int den);

/// sum_k a_k exp(i theta k / N).
cplx lp_eval(const FracLaurent& f, double theta);
/// d^order/dtheta^order of lp_eval(f, theta).
cplx lp_eval_derivative(const FracLaurent& f, double theta, int order);

/// Scalar para-Hermitian conjugate: the coefficient at k becomes conj(a_{-k}).
FracLaurent lp_para_conj(const FracLaurent& f);

/// Default truncation tolerance (relative to the largest coefficient).
inline constexpr double kTruncationTol = 1e-12;

/// Recovers a series from K equispaced samples over one full period 2*pi*den,
/// taken at theta_j = -pi*den + 2*pi*den*j/K. K must be a power of two.
/// Throws AliasError when the coefficients have not decayed at the edge of
/// the resolvable band.
FracLaurent lp_from_samples(std::span<const cplx> samples, int den,
                            double tol = kTruncationTol);

/// General form used by the decomposition pipeline: samples at
/// theta_j = theta_start + 2*pi*den*(j + shift)/K for any K >= 1.
/// Tolerances are relative to max(max|a_k|, ref_scale), so entries of a
/// matrix can be judged against the whole matrix.
FracLaurent lp_from_samples_at(std::span<const cplx> samples, int den,
                               double theta_start, double shift,
                               double tol = kTruncationTol, double ref_scale = 0.0);

/// f(theta + delta) as a series: a_k -> a_k exp(i k delta / den).
FracLaurent lp_shift(const FracLaurent& f, double delta);

FracLaurent operator+(const FracLaurent& f, const FracLaurent& g);
FracLaurent operator-(const FracLaurent& f, const FracLaurent& g);
FracLaurent operator-(const FracLaurent& f);
FracLaurent operator*(const FracLaurent& f, const FracLaurent& g);
FracLaurent scale(const FracLaurent& f, cplx c);
inline FracLaurent operator*(cplx c, const FracLaurent& f) { return scale(f, c); }

/// max_k |a_k - b_k| over the union of supports (at the common denominator).
double max_coeff_diff(const FracLaurent& f, const FracLaurent& g);

int lcm_int(int a, int b);
bool is_power_of_two(long n);
long next_power_of_two(long n);

}  // namespace pherm
