#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pherm/error.hpp"
#include "pherm/evd.hpp"
#include "pherm/kernels.hpp"

namespace pherm {

GaugeResult gauge_fix(std::span<const Eigen::MatrixXcd> frames, double tol) {
  if (frames.size() < 2) throw RangeError("gauge_fix: need at least two samples");
  const int count = static_cast<int>(frames.size()) - 1;
  const Eigen::MatrixXcd omega = frames.front().adjoint() * frames.back();
  const int q = static_cast<int>(omega.rows());
  const double defect = (omega.adjoint() * omega - Eigen::MatrixXcd::Identity(q, q)).norm();
  if (defect > tol) {
    throw GaugeError("gauge_fix: wraparound mismatch is not unitary (defect " + std::to_string(defect) + ")");
  }
  // Omega is normal, so its Schur form is diagonal.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(omega);
  const Eigen::MatrixXcd e = schur.matrixU();
  GaugeResult out;
  out.wrap = omega;
  out.phases.resize(q);
  for (int k = 0; k < q; ++k) out.phases(k) = std::arg(schur.matrixT()(k, k));
  out.frames.resize(count);
  for (int j = 0; j < count; ++j) {
    Eigen::VectorXcd twist(q);
    for (int k = 0; k < q; ++k) twist(k) = std::polar(1.0, -out.phases(k) * j / count);
    out.frames[j] = frames[j] * (e * twist.asDiagonal() * e.adjoint());
  }
  return out;
}

LaurentMatrix matrix_from_samples(std::span<const Eigen::MatrixXcd> samples, int den, double theta_start,
                                  double shift, double tol) {
  if (samples.empty()) throw RangeError("matrix_from_samples: no samples");
  const int rows = static_cast<int>(samples[0].rows());
  const int cols = static_cast<int>(samples[0].cols());
  const int K = static_cast<int>(samples.size());
  double ref = 0.0;
  for (const auto& s : samples) ref = std::max(ref, s.cwiseAbs().maxCoeff());
  LaurentMatrix out(rows, cols);
  std::vector<cplx> buf(K);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      for (int t = 0; t < K; ++t) buf[t] = samples[t](i, j);
      out(i, j) = lp_from_samples_at(buf, den, theta_start, shift, tol, ref);
    }
  }
  return out;
}

int verification_grid_size(int bandwidth) {
  return 2 * static_cast<int>(next_power_of_two(std::max(64, 8 * bandwidth)));
}

Residuals factor_residuals(const LaurentMatrix& a, const LaurentMatrix& u, const LaurentMatrix& s,
                           const LaurentMatrix& v) {
  if (u.rows() != a.rows() || v.rows() != a.cols() || s.rows() != u.cols() || s.cols() != v.cols()) {
    throw ShapeError("factor_residuals: factor shapes do not match");
  }
  int den = 1;
  for (const auto* m : {&a, &u, &s, &v}) den = lcm_int(den, m->den());
  int bw = 0;
  for (const auto* m : {&a, &u, &s, &v}) bw = std::max(bw, m->bandwidth() * (den / m->den()));
  const int K = verification_grid_size(bw);
  const double start = -kPi * den;
  const auto av = kernels::eval_uniform(a, K, den, start, 0.25);
  const auto uv = kernels::eval_uniform(u, K, den, start, 0.25);
  const auto sv = kernels::eval_uniform(s, K, den, start, 0.25);
  const auto vv = kernels::eval_uniform(v, K, den, start, 0.25);
  double err = 0.0, norm_a = 0.0, unit = 0.0, imag = 0.0;
  for (int j = 0; j < K; ++j) {
    err = std::max(err, (av[j] - uv[j] * sv[j] * vv[j].adjoint()).norm());
    norm_a = std::max(norm_a, av[j].norm());
    unit = std::max(unit, (uv[j] * uv[j].adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.rows())).norm());
    unit = std::max(unit, (vv[j] * vv[j].adjoint() - Eigen::MatrixXcd::Identity(v.rows(), v.rows())).norm());
    for (int k = 0; k < std::min(s.rows(), s.cols()); ++k) imag = std::max(imag, std::abs(sv[j](k, k).imag()));
  }
  return {norm_a > 0.0 ? err / norm_a : err, unit, imag};
}

namespace {

Eigen::MatrixXcd polar_factor(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

LaurentMatrix complete_para_unitary(const LaurentMatrix& v, int max_grid) {
  const int n = v.rows();
  const int r = v.cols();
  if (r > n) throw ShapeError("complete_para_unitary: more columns than rows");
  if (r == 0) return LaurentMatrix::identity(n);
  const auto iso = is_para_isometry(v, 1e-8);
  if (!iso.ok) throw NotIsometry("complete_para_unitary: V^P V != I (residual " + std::to_string(iso.residual) + ")");
  if (r == n) return v;

  const int den = v.den();
  const double start = -kPi * den;
  int K = static_cast<int>(next_power_of_two(std::max(64, 8 * v.bandwidth())));
  for (;;) {
    auto vs = kernels::eval_uniform(v, K, den, start, 0.0);
    vs.push_back(vs.front());

    // Transport an orthonormal complement along the loop: project the previous
    // frame onto the new complement and re-orthonormalize.
    std::vector<Eigen::MatrixXcd> frames(K + 1);
    {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vs[0], Eigen::ComputeFullU);
      frames[0] = svd.matrixU().rightCols(n - r);
    }
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    for (int j = 1; j <= K; ++j) {
      const Eigen::MatrixXcd proj = eye - vs[j] * vs[j].adjoint();
      frames[j] = polar_factor(proj * frames[j - 1]);
    }
    try {
      const auto fixed = gauge_fix(frames);
      const LaurentMatrix c = matrix_from_samples(fixed.frames, den, start, 0.0);
      const LaurentMatrix u = hcat(v, c);
      if (is_para_unitary(u, 1e-8).ok) return u;
      if (2 * K > max_grid) throw GaugeError("complete_para_unitary: completion is not para-unitary");
    } catch (const AliasError&) {
      if (2 * K > max_grid) throw;
    }
    K *= 2;
  }
}

}  // namespace pherm
