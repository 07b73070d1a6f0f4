#include "pherm/svd.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/FFT>

#include "pherm/error.hpp"
#include "pherm/kernels.hpp"

namespace pherm {

LaurentMatrix doubled_embedding(const LaurentMatrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  LaurentMatrix h(m + n, m + n);
  const LaurentMatrix ap = mat_para_conj(a);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      h(i, m + j) = a(i, j);
      h(m + j, i) = ap(j, i);
    }
  return h;
}

PmPairing pair_pm_branches(const EvdResult& h, int m, double zero_rel) {
  const int dim = h.U.rows();
  const int n = dim - m;
  if (m < 0 || n < 0) throw ShapeError("pair_pm_branches: block size exceeds the embedding");

  // Sample the eigenvalue functions and eigenvectors on a common grid.
  int den = lcm_int(h.U.den(), h.D.den());
  const int bw = std::max(h.U.bandwidth() * (den / h.U.den()), h.D.bandwidth() * (den / h.D.den()));
  const int K = verification_grid_size(bw);
  const double start = -kPi * den;
  const auto dv = kernels::eval_uniform(h.D, K, den, start, 0.25);
  const auto uv = kernels::eval_uniform(h.U, K, den, start, 0.25);
  Eigen::MatrixXd mu(dim, K);
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < dim; ++i) mu(i, j) = dv[j](i, i).real();
  const double scale = dim > 0 ? mu.cwiseAbs().maxCoeff() : 0.0;
  const double zero_tol = zero_rel * scale;
  const double same_tol = 1e-8 * std::max(scale, 1e-300);

  // Classes of identical branch functions, excluding zero branches.
  std::vector<int> cls(dim, -1);
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < dim; ++i) {
    if (scale == 0.0 || mu.row(i).cwiseAbs().maxCoeff() <= zero_tol) continue;
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<int>(classes.size());
    classes.push_back({i});
    for (int k = i + 1; k < dim; ++k) {
      if (cls[k] < 0 && (mu.row(i) - mu.row(k)).cwiseAbs().maxCoeff() <= same_tol) {
        cls[k] = cls[i];
        classes.back().push_back(k);
      }
    }
  }

  PmPairing out;
  std::vector<int> plus_cols;
  std::vector<char> used(classes.size(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (used[c]) continue;
    const int i = classes[c][0];
    int mirror = -1;
    for (std::size_t d = 0; d < classes.size(); ++d) {
      if (d != c && !used[d] && (mu.row(i) + mu.row(classes[d][0])).cwiseAbs().maxCoeff() <= same_tol) {
        mirror = static_cast<int>(d);
        break;
      }
    }
    if (mirror < 0 || classes[mirror].size() != classes[c].size()) {
      throw PairingError("pair_pm_branches: branch " + std::to_string(i) + " has no mirror -lambda");
    }
    used[c] = used[mirror] = 1;
    // + side: positive at the first node after theta = 0 where it is not small.
    int plus = static_cast<int>(c);
    for (int t = 0; t < K; ++t) {
      const double v = mu(i, (K / 2 + t) % K);
      if (std::abs(v) > 1e-6 * scale) {
        if (v < 0.0) plus = mirror;
        break;
      }
    }
    const int minus = plus == static_cast<int>(c) ? mirror : static_cast<int>(c);

    // Eigenvector block-sign check: [b; -c] must lie in the mirror eigenspace.
    for (int t = 0; t < K; t += std::max(1, K / 64)) {
      Eigen::MatrixXcd mir(dim, classes[minus].size());
      for (std::size_t k = 0; k < classes[minus].size(); ++k) mir.col(k) = uv[t].col(classes[minus][k]);
      for (int col : classes[plus]) {
        Eigen::VectorXcd w = uv[t].col(col);
        w.tail(n) *= -1.0;
        const double res = (w - mir * (mir.adjoint() * w)).norm();
        if (res > 1e-8) {
          throw PairingError("pair_pm_branches: mirror eigenvector is not [b; -c] (defect " + std::to_string(res) + ")");
        }
      }
    }
    for (int col : classes[plus]) plus_cols.push_back(col);
  }

  out.r = static_cast<int>(plus_cols.size());
  out.B = LaurentMatrix(m, out.r);
  out.C = LaurentMatrix(n, out.r);
  for (int k = 0; k < out.r; ++k) {
    const int col = plus_cols[k];
    for (int i = 0; i < m; ++i) out.B(i, k) = h.U(i, col);
    for (int i = 0; i < n; ++i) out.C(i, k) = h.U(m + i, col);
    out.lambda.push_back(h.D(col, col));
  }
  return out;
}

SvdResult analytic_svd(const LaurentMatrix& a, const EvdOptions& opts) {
  const int m = a.rows();
  const int n = a.cols();
  if (m == 0 || n == 0) throw ShapeError("analytic_svd: empty matrix");
  const EvdResult h = analytic_evd(doubled_embedding(a), opts);
  const PmPairing pm = pair_pm_branches(h, m);

  const double s2 = std::sqrt(2.0);
  SvdResult out;
  out.grid = h.grid;
  out.rank = pm.r;
  out.U = complete_para_unitary(scale(pm.B, s2), opts.max_grid);
  out.V = complete_para_unitary(scale(pm.C, s2), opts.max_grid);
  out.S = LaurentMatrix(m, n);
  for (int k = 0; k < pm.r; ++k) out.S(k, k) = pm.lambda[k];
  out.N = lcm_int(lcm_int(out.U.den(), out.V.den()), out.S.den());
  out.residuals = factor_residuals(a, out.U, out.S, out.V);
  if (out.residuals.reconstruction > opts.tol) {
    throw ResidualError("analytic_svd: reconstruction residual " + std::to_string(out.residuals.reconstruction));
  }
  return out;
}

std::vector<Eigen::VectorXd> pointwise_singular_values(const LaurentMatrix& a, std::span<const double> thetas) {
  const auto vals = kernels::eval_nodes(a, thetas);
  std::vector<Eigen::VectorXd> out;
  out.reserve(vals.size());
  for (const auto& v : vals) out.push_back(Eigen::JacobiSVD<Eigen::MatrixXcd>(v).singularValues());
  return out;
}

DenObstruction base_den_obstruction(const LaurentMatrix& a, const SvdResult& svd, int K) {
  DenObstruction out;
  const int den = a.den();
  out.base_den = den;
  const auto thetas = grid_nodes(K, den);
  const auto sv = pointwise_singular_values(a, thetas);
  const int r = std::min(a.rows(), a.cols());
  Eigen::FFT<double> fft;
  const int guard = std::max(1, K / 8);
  for (int k = 0; k < r; ++k) {
    std::vector<cplx> in(K), spec;
    for (int j = 0; j < K; ++j) in[j] = sv[j](k);
    fft.fwd(spec, in);
    double peak = 0.0, edge = 0.0;
    for (int b = 0; b < K; ++b) {
      const int kk = b <= K / 2 ? b : b - K;
      const double mag = std::abs(spec[b]) / K;
      peak = std::max(peak, mag);
      if (std::abs(kk) > K / 2 - guard) edge = std::max(edge, mag);
    }
    if (peak > 0.0) out.edge_ratio = std::max(out.edge_ratio, edge / peak);
  }
  out.pointwise_analytic = out.edge_ratio <= 10.0 * kTruncationTol;

  const double T = 2.0 * kPi * den;
  for (int k = 0; k < std::min(svd.S.rows(), svd.S.cols()); ++k) {
    for (double t : thetas) {
      const double d = std::abs(lp_eval(svd.S(k, k), t + T) - lp_eval(svd.S(k, k), t));
      out.shift_mismatch = std::max(out.shift_mismatch, d);
    }
  }
  out.signed_periodic = out.shift_mismatch <= 1e-8 * std::max(1.0, svd.S.max_coeff_abs());
  return out;
}

}  // namespace pherm
