#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pherm/error.hpp"
#include "pherm/matfun.hpp"

using namespace pherm;

TEST(MatFun, ProductAndParaConjugate) {
  oracle::Random rnd(11);
  for (int t = 0; t < 20; ++t) {
    const auto a = rnd.matrix_function(2, 3, 2, rnd.integer(1, 3));
    const auto b = rnd.matrix_function(3, 2, 1, rnd.integer(1, 2));
    const double th = rnd.uniform(-3.0, 3.0);
    EXPECT_LT((oracle::eval(a * b, th) - oracle::eval(a, th) * oracle::eval(b, th)).norm(), 1e-11);
    EXPECT_LT(max_coeff_diff(mat_para_conj(a * b), mat_para_conj(b) * mat_para_conj(a)), 1e-12);
    EXPECT_LT((oracle::eval(mat_para_conj(a), th) - oracle::eval(a, th).adjoint()).norm(), 1e-12);
  }
}

TEST(MatFun, ShapeErrors) {
  EXPECT_THROW(LaurentMatrix(2, 3) * LaurentMatrix(2, 3), ShapeError);
  EXPECT_THROW(LaurentMatrix(2, 3) + LaurentMatrix(3, 2), ShapeError);
}

TEST(MatFun, StructureChecks) {
  EXPECT_TRUE(is_para_hermitian(oracle::r_example()).ok);
  LaurentMatrix bad = oracle::r_example();
  bad(0, 1) = FracLaurent(1, 0, {1.0, 2.0});
  const auto s = is_para_hermitian(bad);
  EXPECT_FALSE(s.ok);
  EXPECT_NEAR(s.residual, 1.0, 1e-14);

  oracle::Random rnd(12);
  const auto u = rnd.para_unitary(3, 2);
  EXPECT_TRUE(is_para_unitary(u).ok);
  EXPECT_TRUE(is_para_isometry(u.block(0, 0, 3, 2)).ok);
  EXPECT_FALSE(is_para_unitary(scale(u, 1.1)).ok);
}

TEST(MatFun, GridEvaluation) {
  oracle::Random rnd(13);
  const auto a = rnd.symmetrized(3, 2);
  const auto g = eval_grid(a, 64);
  ASSERT_EQ(g.values.size(), 64u);
  for (int j = 0; j < 64; j += 7) EXPECT_LT((g.values[j] - oracle::eval(a, g.thetas[j])).norm(), 1e-11);
  EXPECT_EQ(default_grid_size(a), 64);
}

TEST(MatFun, DeterminantOfR) {
  // det R = -(1 + z)(1 + z^{-1}) = -(2 + 2 cos theta)
  const auto dt = det_trace_grid(oracle::r_example(), 32);
  for (std::size_t j = 0; j < dt.thetas.size(); ++j) {
    EXPECT_LT(std::abs(dt.det[j] + 2.0 + 2.0 * std::cos(dt.thetas[j])), 1e-12);
    EXPECT_LT(std::abs(dt.trace[j]), 1e-14);
  }
}
