#include "pherm/pseudocirc.hpp"

#include <algorithm>
#include <cmath>

#include "pherm/error.hpp"

namespace pherm {

Eigen::MatrixXcd FourierShift::D(double theta) const {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(N, N);
  for (int k = 0; k < N; ++k) d(k, k) = std::polar(1.0, theta * k / N);
  return d;
}

FourierShift fourier_shift(int N) {
  if (N < 1) throw RangeError("fourier_shift: N must be >= 1");
  FourierShift fs;
  fs.N = N;
  fs.F.resize(N, N);
  fs.P = Eigen::MatrixXcd::Zero(N, N);
  const double s = 1.0 / std::sqrt(static_cast<double>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) fs.F(i, j) = s * std::polar(1.0, 2.0 * kPi * ((i * j) % N) / N);
  for (int j = 0; j < N; ++j) fs.P((j + 1) % N, j) = 1.0;
  return fs;
}

namespace {

// Lifts f to denominator den and zeroes coefficients with |a| <= cut.
std::vector<cplx> lifted(const FracLaurent& f, int den, int lo, int hi) {
  std::vector<cplx> out(hi - lo + 1, cplx{0.0, 0.0});
  const int step = den / f.den();
  for (int k = f.lo(); k <= f.hi(); ++k) out[k * step - lo] = f.coeff(k);
  return out;
}

FracLaurent drop_below(const FracLaurent& f, double cut) {
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (auto& x : c)
    if (std::abs(x) <= cut) x = {0.0, 0.0};
  return FracLaurent(f.den(), f.lo(), std::move(c));
}

}  // namespace

FracLaurent PseudoCircBlock::phi(int q) const {
  if (q <= -M || q >= M) throw RangeError("PseudoCircBlock::phi: index out of range");
  if (q >= 0) return phis[q];
  return FracLaurent::monomial(1.0, -1) * phis[q + M];
}

LaurentMatrix PseudoCircBlock::matrix() const {
  LaurentMatrix c(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) c(i, j) = phi(i - j);
  return c;
}

PseudoCircBlock build_block(const std::vector<FracLaurent>& mus) {
  const int M = static_cast<int>(mus.size());
  if (M < 1) throw RangeError("build_block: empty orbit");
  double scale = 0.0;
  for (const auto& mu : mus) scale = std::max(scale, mu.max_abs());
  for (int k = 1; k < M; ++k) {
    const double dev = max_coeff_diff(mus[k], lp_shift(mus[0], 2.0 * kPi * k));
    if (dev > 1e-8 * std::max(1.0, scale)) {
      throw OrbitError("build_block: branch " + std::to_string(k) + " is not a 2*pi shift of branch 0 (deviation " +
                       std::to_string(dev) + ")");
    }
  }
  for (const auto& mu : mus) {
    if (M % mu.den() != 0) throw OrbitError("build_block: branch period does not divide 2*pi*M");
  }

  // In w = z^{1/M}, multiplying by e^{i theta q/M} shifts exponents by q and
  // the twiddled sum keeps only exponents divisible by M.
  int lo = 0, hi = 0;
  for (const auto& mu : mus) {
    lo = std::min(lo, mu.lo() * (M / mu.den()));
    hi = std::max(hi, mu.hi() * (M / mu.den()));
  }
  std::vector<std::vector<cplx>> c(M);
  for (int k = 0; k < M; ++k) c[k] = lifted(mus[k], M, lo, hi);

  PseudoCircBlock block;
  block.M = M;
  const double cut = kTruncationTol * std::max(scale, 1e-300);
  for (int q = 0; q < M; ++q) {
    std::vector<cplx> out(hi - lo + 1, cplx{0.0, 0.0});
    for (int idx = 0; idx <= hi - lo; ++idx) {
      cplx acc{0.0, 0.0};
      for (int k = 0; k < M; ++k) acc += c[k][idx] * std::polar(1.0, 2.0 * kPi * ((q * k) % M) / M);
      out[idx] = acc / static_cast<double>(M);
    }
    const FracLaurent phi = drop_below(FracLaurent(M, lo + q, std::move(out)), cut);
    if (phi.den() != 1) throw OrbitError("build_block: phi_" + std::to_string(q) + " is not single-valued");
    block.phis.push_back(phi);
  }
  return block;
}

PseudoCircBlock build_block(const FracLaurent& mu1, int M) {
  if (M < 1) throw RangeError("build_block: M must be >= 1");
  std::vector<FracLaurent> mus;
  for (int k = 0; k < M; ++k) mus.push_back(lp_shift(mu1, 2.0 * kPi * k));
  return build_block(mus);
}

PseudoCircResult pseudo_circulant_decomposition(const LaurentMatrix& a, const EvdOptions& opts) {
  if (a.den() != 1) throw RangeError("pseudo_circulant_decomposition: input must have denominator 1");
  const EvdResult evd = analytic_evd(a, opts);
  const int n = a.rows();

  PseudoCircResult out;
  out.grid = evd.grid;
  out.W = LaurentMatrix(n, n);
  std::vector<LaurentMatrix> blocks;
  const double cut = kTruncationTol * std::max(evd.U.max_coeff_abs(), 1e-300);
  int col = 0;
  for (const auto& orbit : evd.orbits) {
    // orbit = columns v_1(theta), v_1(theta + 2 pi), ... of one representative.
    const int M = static_cast<int>(orbit.size());
    const FourierShift fs = fourier_shift(M);
    for (int j = 0; j < M; ++j) {
      // Column j of V~ F^* D(theta)^*.
      const FracLaurent twist = FracLaurent::monomial(1.0, -j, M);
      for (int i = 0; i < n; ++i) {
        FracLaurent acc;
        for (int k = 0; k < M; ++k) acc = acc + scale(evd.U(i, orbit[k]), std::conj(fs.F(j, k)));
        const FracLaurent w = drop_below(acc * twist, cut);
        if (w.den() != 1) {
          throw StructureError("pseudo_circulant_decomposition: transformed eigenvectors are not 2*pi periodic");
        }
        out.W(i, col + j) = w;
      }
    }
    std::vector<FracLaurent> mus;
    for (int c : orbit) mus.push_back(evd.D(c, c));
    out.blocks.push_back(build_block(mus));
    blocks.push_back(out.blocks.back().matrix());
    col += M;
  }

  out.C = LaurentMatrix(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) out.C(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  out.residuals = factor_residuals(a, out.W, out.C, out.W);
  if (out.residuals.reconstruction > opts.tol) {
    throw ResidualError("pseudo_circulant_decomposition: reconstruction residual " +
                        std::to_string(out.residuals.reconstruction));
  }
  return out;
}

PseudoCircCheck verify_pseudo_circulant(const LaurentMatrix& c, double tol) {
  if (!c.square()) throw ShapeError("verify_pseudo_circulant: matrix is not square");
  const int M = c.rows();
  PseudoCircBlock block;
  block.M = M;
  for (int q = 0; q < M; ++q) block.phis.push_back(c(q, 0));
  double worst = 0.0;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) worst = std::max(worst, max_coeff_diff(c(i, j), block.phi(i - j)));
  return {worst <= tol, worst};
}

}  // namespace pherm
