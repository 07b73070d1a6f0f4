#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pherm/laurent.hpp"

namespace pherm {

/// Dense m x n matrix of FracLaurent entries. The common denominator is the
/// lcm of the entry denominators, so every entry lives in H_N(S^1) for
/// N = den().
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(int rows, int cols);

  static LaurentMatrix identity(int n);
  static LaurentMatrix constant(const Eigen::MatrixXcd& m);
  static LaurentMatrix diagonal(const std::vector<FracLaurent>& d);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  const FracLaurent& operator()(int i, int j) const { return entries_[i * cols_ + j]; }
  FracLaurent& operator()(int i, int j) { return entries_[i * cols_ + j]; }

  int den() const noexcept;
  /// Largest |exponent| in units of w = z^{1/den()}.
  int bandwidth() const noexcept;
  double max_coeff_abs() const noexcept;

  Eigen::MatrixXcd eval(double theta) const;
  Eigen::MatrixXcd eval_derivative(double theta, int order = 1) const;

  LaurentMatrix block(int i0, int j0, int rows, int cols) const;
  LaurentMatrix col(int j) const { return block(0, j, rows_, 1); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<FracLaurent> entries_;
};

LaurentMatrix mat_para_conj(const LaurentMatrix& a);
LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix scale(const LaurentMatrix& a, cplx c);
/// Horizontal concatenation [a, b].
LaurentMatrix hcat(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix truncated(const LaurentMatrix& a, double rel_tol);

/// Entrywise maximum coefficient deviation.
double max_coeff_diff(const LaurentMatrix& a, const LaurentMatrix& b);

struct StructureCheck {
  bool ok = false;
  double residual = 0.0;
};

/// residual = max coefficient deviation of A - A^P.
StructureCheck is_para_hermitian(const LaurentMatrix& a, double tol = 1e-10);
/// residual = max over a 4*N*dim (at least 8x bandwidth) grid of ||U U* - I||_F.
StructureCheck is_para_unitary(const LaurentMatrix& u, double tol = 1e-8);
/// residual = max over the same kind of grid of ||V* V - I||_F (tall V).
StructureCheck is_para_isometry(const LaurentMatrix& v, double tol = 1e-8);

/// K equispaced samples of A over one full period 2*pi*N.
struct GridSamples {
  int K = 0;
  int den = 1;
  std::vector<double> thetas;
  std::vector<Eigen::MatrixXcd> values;
};

/// Nodes theta_j = -pi*den + 2*pi*den*(j + shift)/K.
std::vector<double> grid_nodes(int K, int den, double shift = 0.0);

/// max(64, 8 * bandwidth) rounded up to a power of two.
int default_grid_size(const LaurentMatrix& a);

/// Pointwise evaluation on the standard grid. K must be a power of two and
/// at least 4x the bandwidth.
GridSamples eval_grid(const LaurentMatrix& a, int K);

struct DetTrace {
  std::vector<double> thetas;
  std::vector<cplx> det;
  std::vector<cplx> trace;
};
DetTrace det_trace_grid(const LaurentMatrix& a, int K);

}  // namespace pherm
