#include "pherm/matfun.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "pherm/error.hpp"
#include "pherm/kernels.hpp"

namespace pherm {

LaurentMatrix::LaurentMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw ShapeError("LaurentMatrix: negative dimension");
}

LaurentMatrix LaurentMatrix::identity(int n) {
  LaurentMatrix out(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = FracLaurent::constant(1.0);
  return out;
}

LaurentMatrix LaurentMatrix::constant(const Eigen::MatrixXcd& m) {
  LaurentMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) = FracLaurent::constant(m(i, j));
  return out;
}

LaurentMatrix LaurentMatrix::diagonal(const std::vector<FracLaurent>& d) {
  const int n = static_cast<int>(d.size());
  LaurentMatrix out(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = d[i];
  return out;
}

int LaurentMatrix::den() const noexcept {
  int den = 1;
  for (const auto& e : entries_) den = lcm_int(den, e.den());
  return den;
}

int LaurentMatrix::bandwidth() const noexcept {
  const int d = den();
  int bw = 0;
  for (const auto& e : entries_) bw = std::max(bw, e.bandwidth_at(d));
  return bw;
}

double LaurentMatrix::max_coeff_abs() const noexcept {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs());
  return m;
}

Eigen::MatrixXcd LaurentMatrix::eval(double theta) const {
  Eigen::MatrixXcd out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = lp_eval((*this)(i, j), theta);
  return out;
}

Eigen::MatrixXcd LaurentMatrix::eval_derivative(double theta, int order) const {
  Eigen::MatrixXcd out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = lp_eval_derivative((*this)(i, j), theta, order);
  return out;
}

LaurentMatrix LaurentMatrix::block(int i0, int j0, int rows, int cols) const {
  if (i0 < 0 || j0 < 0 || i0 + rows > rows_ || j0 + cols > cols_) {
    throw ShapeError("LaurentMatrix::block out of range");
  }
  LaurentMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
  return out;
}

LaurentMatrix mat_para_conj(const LaurentMatrix& a) {
  LaurentMatrix out(a.cols(), a.rows());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < a.rows(); ++j) out(i, j) = lp_para_conj(a(j, i));
  return out;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("LaurentMatrix product: inner dimensions differ");
  LaurentMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      FracLaurent acc;
      for (int k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc = acc + a(i, k) * b(k, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("LaurentMatrix sum: shapes differ");
  LaurentMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) { return a + scale(b, -1.0); }

LaurentMatrix scale(const LaurentMatrix& a, cplx c) {
  LaurentMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = scale(a(i, j), c);
  return out;
}

LaurentMatrix hcat(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("hcat: row counts differ");
  LaurentMatrix out(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

LaurentMatrix truncated(const LaurentMatrix& a, double rel_tol) {
  const double cut = rel_tol * a.max_coeff_abs();
  LaurentMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const FracLaurent& e = a(i, j);
      std::vector<cplx> c(e.coeffs().begin(), e.coeffs().end());
      for (auto& x : c)
        if (std::abs(x) <= cut) x = {0.0, 0.0};
      out(i, j) = FracLaurent(e.den(), e.lo(), std::move(c));
    }
  }
  return out;
}

double max_coeff_diff(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_coeff_diff: shapes differ");
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, max_coeff_diff(a(i, j), b(i, j)));
  return worst;
}

StructureCheck is_para_hermitian(const LaurentMatrix& a, double tol) {
  if (!a.square()) throw ShapeError("is_para_hermitian: matrix is not square");
  const double r = max_coeff_diff(a, mat_para_conj(a));
  return {r <= tol, r};
}

namespace {

int check_grid_size(const LaurentMatrix& u) {
  const long dim = std::max(u.rows(), u.cols());
  const long want = std::max({4L * u.den() * dim, 8L * u.bandwidth(), 16L});
  return static_cast<int>(next_power_of_two(want));
}

StructureCheck gram_check(const LaurentMatrix& u, bool left, double tol) {
  const int K = check_grid_size(u);
  const auto samples = kernels::eval_uniform(u, K, u.den(), -kPi * u.den(), 0.0);
  double worst = 0.0;
  for (const auto& s : samples) {
    const Eigen::MatrixXcd g = left ? Eigen::MatrixXcd(s * s.adjoint()) : Eigen::MatrixXcd(s.adjoint() * s);
    worst = std::max(worst, (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).norm());
  }
  return {worst <= tol, worst};
}

}  // namespace

StructureCheck is_para_unitary(const LaurentMatrix& u, double tol) {
  if (!u.square()) throw ShapeError("is_para_unitary: matrix is not square");
  return gram_check(u, true, tol);
}

StructureCheck is_para_isometry(const LaurentMatrix& v, double tol) {
  if (v.rows() < v.cols()) throw ShapeError("is_para_isometry: more columns than rows");
  return gram_check(v, false, tol);
}

std::vector<double> grid_nodes(int K, int den, double shift) {
  std::vector<double> t(K);
  for (int j = 0; j < K; ++j) t[j] = -kPi * den + 2.0 * kPi * den * (j + shift) / K;
  return t;
}

int default_grid_size(const LaurentMatrix& a) {
  return static_cast<int>(next_power_of_two(std::max(64, 8 * a.bandwidth())));
}

GridSamples eval_grid(const LaurentMatrix& a, int K) {
  if (!is_power_of_two(K)) throw RangeError("eval_grid: K must be a power of two");
  if (K < 4 * a.bandwidth()) throw AliasError("eval_grid: K below 4x the coefficient bandwidth");
  GridSamples g;
  g.K = K;
  g.den = a.den();
  g.thetas = grid_nodes(K, g.den);
  g.values = kernels::eval_uniform(a, K, g.den, -kPi * g.den, 0.0);
  return g;
}

DetTrace det_trace_grid(const LaurentMatrix& a, int K) {
  if (!a.square()) throw ShapeError("det_trace_grid: matrix is not square");
  const GridSamples g = eval_grid(a, K);
  DetTrace out;
  out.thetas = g.thetas;
  out.det.resize(K);
  out.trace.resize(K);
  for (int j = 0; j < K; ++j) {
    out.det[j] = a.rows() == 0 ? cplx{1.0, 0.0} : g.values[j].partialPivLu().determinant();
    out.trace[j] = g.values[j].trace();
  }
  return out;
}

}  // namespace pherm
