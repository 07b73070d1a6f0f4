#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pherm/error.hpp"
#include "pherm/svd.hpp"

using namespace pherm;

TEST(Svd, RowVector) {
  LaurentMatrix a(1, 2);
  a(0, 0) = FracLaurent::constant(1.0);
  a(0, 1) = FracLaurent::monomial(1.0, 1);
  const SvdResult r = analytic_svd(a);
  EXPECT_EQ(r.rank, 1);
  EXPECT_LT(r.residuals.reconstruction, 1e-9);
  for (int j = 0; j < 64; ++j) {
    const double th = -oracle::pi + 2.0 * oracle::pi * (j + 0.5) / 64;
    EXPECT_NEAR(std::abs(oracle::eval(r.S(0, 0), th)), std::sqrt(2.0), 1e-10);
    EXPECT_LT(std::abs(oracle::eval(r.S(0, 1), th)), 1e-10);
  }
  EXPECT_TRUE(is_para_unitary(r.U).ok);
  EXPECT_TRUE(is_para_unitary(r.V).ok);
}

TEST(Svd, OnePlusZNeedsSquareRoot) {
  LaurentMatrix a(1, 1);
  a(0, 0) = FracLaurent(1, 0, {1.0, 1.0});
  const SvdResult r = analytic_svd(a);
  EXPECT_EQ(r.N, 2);
  EXPECT_LT(r.residuals.reconstruction, 1e-9);
  for (int j = 0; j < 64; ++j) {
    const double th = -oracle::pi + 2.0 * oracle::pi * (j + 0.5) / 64;
    EXPECT_NEAR(std::abs(oracle::eval(r.S(0, 0), th)), std::abs(2.0 * std::cos(th / 2.0)), 1e-9);
  }
  const DenObstruction o = base_den_obstruction(a, r);
  EXPECT_FALSE(o.pointwise_analytic);
  EXPECT_FALSE(o.signed_periodic);
  EXPECT_TRUE(o.obstructed());
}

TEST(Svd, ConstructAndRecover) {
  oracle::Random rnd(61);
  for (int t = 0; t < 6; ++t) {
    const int m = rnd.integer(1, 3), n = rnd.integer(1, 3);
    const auto u0 = rnd.para_unitary(m, 1);
    const auto v0 = rnd.para_unitary(n, 1);
    LaurentMatrix s0(m, n);
    for (int k = 0; k < std::min(m, n); ++k) s0(k, k) = FracLaurent(1, -1, {0.4, 1.0 + k, 0.4});
    const LaurentMatrix a = u0 * s0 * mat_para_conj(v0);
    const SvdResult r = analytic_svd(a);
    EXPECT_LT(r.residuals.reconstruction, 1e-8) << t;
    EXPECT_LT(r.residuals.para_unitarity, 1e-8) << t;
    // |S| agrees with classical singular values pointwise
    for (double th : {-2.0, 0.4, 1.7}) {
      const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(oracle::eval(a, th)).singularValues();
      std::vector<double> got;
      for (int k = 0; k < std::min(m, n); ++k) got.push_back(std::abs(oracle::eval(r.S(k, k), th)));
      std::sort(got.rbegin(), got.rend());
      for (int k = 0; k < std::min(m, n); ++k) EXPECT_NEAR(got[k], sv(k), 1e-8);
    }
  }
}

TEST(Svd, ZeroMatrixHasRankZero) {
  const SvdResult r = analytic_svd(LaurentMatrix(2, 2));
  EXPECT_EQ(r.rank, 0);
  EXPECT_LT(r.residuals.reconstruction, 1e-14);
}

TEST(Svd, DoubledEmbeddingIsParaHermitian) {
  oracle::Random rnd(62);
  const auto a = rnd.matrix_function(2, 3, 2);
  EXPECT_TRUE(is_para_hermitian(doubled_embedding(a)).ok);
}
