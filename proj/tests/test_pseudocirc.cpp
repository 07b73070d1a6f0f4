#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pherm/error.hpp"
#include "pherm/pseudocirc.hpp"

using namespace pherm;

TEST(PseudoCirc, FourierShiftIdentity) {
  oracle::Random rnd(51);
  for (int N = 1; N <= 6; ++N) {
    const FourierShift fs = fourier_shift(N);
    EXPECT_LT((fs.F * fs.F.adjoint() - Eigen::MatrixXcd::Identity(N, N)).norm(), 1e-14);
    Eigen::MatrixXcd pn = Eigen::MatrixXcd::Identity(N, N);
    for (int k = 0; k < N; ++k) pn = pn * fs.P;
    EXPECT_LT((pn - Eigen::MatrixXcd::Identity(N, N)).norm(), 1e-15);
    for (int t = 0; t < 16; ++t) {
      const double th = rnd.uniform(-10.0, 10.0);
      EXPECT_LT((fs.D(th + 2.0 * oracle::pi) * fs.F - fs.D(th) * fs.F * fs.P).norm(), 1e-13);
    }
  }
}

TEST(PseudoCirc, BlockMatchesSampledSumFormula) {
  // mu(theta) with period 2 pi M; phi_q from the sum formula sampled on a
  // 2 pi grid and recovered by a trapezoid sum
  oracle::Random rnd(52);
  for (int M : {2, 3, 4}) {
    const FracLaurent mu = rnd.series(2, M);
    const PseudoCircBlock b = build_block(mu, M);
    ASSERT_EQ(b.M, M);
    for (int q = 0; q < M; ++q) {
      auto phi = [&](double th) {
        cplx s = 0.0;
        for (int k = 0; k < M; ++k)
          s += oracle::eval(mu, th + 2.0 * oracle::pi * k) * std::exp(cplx(0.0, 2.0 * oracle::pi * q * k / M));
        return s * std::exp(cplx(0.0, th * q / M)) / static_cast<double>(M);
      };
      EXPECT_EQ(b.phis[q].den(), 1);
      for (int k = -4; k <= 4; ++k) {
        const cplx ref = oracle::trapezoid_coeff(phi, k, 1, 64);
        EXPECT_LT(std::abs(b.phis[q].coeff(k) - ref), 1e-12) << "M=" << M << " q=" << q << " k=" << k;
      }
    }
    // wrap identity is exact
    for (int q = 1; q < M; ++q) EXPECT_EQ(b.phi(q - M) * FracLaurent::monomial(1.0, 1), b.phis[q]);
    EXPECT_TRUE(verify_pseudo_circulant(b.matrix()).ok);
  }
}

TEST(PseudoCirc, BlockRejectsInconsistentOrbit) {
  const FracLaurent a(2, -1, {1.0, 0.0, 1.0});
  EXPECT_THROW(build_block({a, a}), OrbitError);
  EXPECT_THROW(build_block(FracLaurent::monomial(1.0, 1, 3), 2), OrbitError);
}

TEST(PseudoCirc, DecompositionOfR) {
  const auto a = oracle::r_example();
  const PseudoCircResult r = pseudo_circulant_decomposition(a);
  ASSERT_EQ(r.blocks.size(), 1u);
  const auto& b = r.blocks[0];
  ASSERT_EQ(b.M, 2);
  EXPECT_LT(b.phis[0].max_abs(), 1e-10);
  EXPECT_LT(max_coeff_diff(b.phis[1], FracLaurent(1, 0, {1.0, 1.0})), 1e-9);
  EXPECT_EQ(r.W.den(), 1);
  EXPECT_TRUE(is_para_unitary(r.W).ok);
  EXPECT_LT(r.residuals.reconstruction, 1e-8);
  EXPECT_TRUE(verify_pseudo_circulant(r.C, 1e-9).ok);
}

TEST(PseudoCirc, MixedOrbits) {
  // blockdiag(R, c) rotated by a constant unitary: one 2-orbit and one fixed
  oracle::Random rnd(53);
  LaurentMatrix d(3, 3);
  const auto r = oracle::r_example();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d(i, j) = r(i, j);
  d(2, 2) = FracLaurent(1, -1, {0.3, 0.1, 0.3});
  const Eigen::MatrixXcd q = rnd.unitary(3);
  const LaurentMatrix a = LaurentMatrix::constant(q) * d * LaurentMatrix::constant(q.adjoint());
  const PseudoCircResult res = pseudo_circulant_decomposition(a);
  EXPECT_EQ(res.blocks.size(), 2u);
  EXPECT_LT(res.residuals.reconstruction, 1e-8);
  EXPECT_EQ(res.W.den(), 1);
}

TEST(PseudoCirc, RejectsFractionalInput) {
  LaurentMatrix a(1, 1);
  a(0, 0) = FracLaurent(2, -1, {1.0, 0.0, 1.0});
  EXPECT_THROW(pseudo_circulant_decomposition(a), RangeError);
}
