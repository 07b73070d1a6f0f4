#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pherm/branches.hpp"
#include "pherm/error.hpp"
#include "pherm/evd.hpp"

using namespace pherm;

namespace {

// max over nodes of the distance between sorted diag(D(theta)) and the dense
// solver's eigenvalues of A(theta)
double spectrum_gap(const LaurentMatrix& a, const EvdResult& r, int nodes) {
  double worst = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double th = -oracle::pi * a.den() + 2.0 * oracle::pi * a.den() * (j + 0.37) / nodes;
    const auto ref = oracle::hermitian_eigenvalues(oracle::eval(a, th));
    std::vector<double> got;
    for (int i = 0; i < r.D.rows(); ++i) got.push_back(oracle::eval(r.D(i, i), th).real());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - ref[i]));
  }
  return worst;
}

}  // namespace

TEST(Evd, SquareRootExample) {
  const auto a = oracle::r_example();
  const EvdResult r = analytic_evd(a);
  EXPECT_EQ(r.N, 2);
  EXPECT_LT(r.residuals.reconstruction, 1e-10);
  EXPECT_LT(r.residuals.para_unitarity, 1e-10);
  EXPECT_LT(r.residuals.realness, 1e-12);
  // D = diag(+-(z^{1/2} + z^{-1/2}))
  const FracLaurent two_cos(2, -1, {1.0, 0.0, 1.0});
  const double d0 = std::min(max_coeff_diff(r.D(0, 0), two_cos), max_coeff_diff(r.D(0, 0), -two_cos));
  EXPECT_LT(d0, 1e-10);
  EXPECT_LT(max_coeff_diff(r.D(1, 1), lp_shift(r.D(0, 0), 2.0 * oracle::pi)), 1e-10);
  EXPECT_EQ(r.sigma, (std::vector<int>{1, 0}));
  // pointwise: A U = U D
  for (double th : {-3.0, -0.5, 1.0, 2.9}) {
    const auto u = oracle::eval(r.U, th);
    EXPECT_LT((oracle::eval(a, th) * u - u * oracle::eval(r.D, th)).norm(), 1e-10);
  }
}

TEST(Evd, CyclicShiftNeedsCubeRoot) {
  // C^3 = z I; C + C^P has eigenvalues 2 cos((theta + 2 pi k) / 3)
  LaurentMatrix c(3, 3);
  c(0, 2) = FracLaurent::monomial(1.0, 1);
  c(1, 0) = FracLaurent::constant(1.0);
  c(2, 1) = FracLaurent::constant(1.0);
  const LaurentMatrix a = c + mat_para_conj(c);
  const EvdResult r = analytic_evd(a);
  EXPECT_EQ(r.N, 3);
  EXPECT_LT(r.residuals.reconstruction, 1e-9);
  EXPECT_LT(r.residuals.para_unitarity, 1e-9);
  ASSERT_EQ(r.orbits.size(), 1u);
  EXPECT_EQ(r.orbits[0].size(), 3u);
  EXPECT_LT(spectrum_gap(a, r, 50), 1e-10);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(r.D(i, i).den(), 3);
}

TEST(Evd, ConstructAndRecoverWithCrossings) {
  // D0 = diag(cos theta, sin theta, 0.5): the first two cross twice.
  oracle::Random rnd(41);
  const auto u0 = rnd.para_unitary(3, 2);
  const std::vector<FracLaurent> d0 = {FracLaurent(1, -1, {0.5, 0.0, 0.5}),
                                       FracLaurent(1, -1, {cplx(0, 0.5), 0.0, cplx(0, -0.5)}),
                                       FracLaurent::constant(0.5)};
  const LaurentMatrix a = u0 * LaurentMatrix::diagonal(d0) * mat_para_conj(u0);
  const EvdResult r = analytic_evd(a);
  EXPECT_EQ(r.N, 1);
  EXPECT_LT(r.residuals.reconstruction, 1e-9);
  // the recovered branches are the analytic ones, not the sorted ones
  std::vector<bool> hit(3, false);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      if (max_coeff_diff(r.D(i, i), d0[k]) < 1e-9) hit[k] = true;
  EXPECT_TRUE(hit[0] && hit[1] && hit[2]);
}

TEST(Evd, RandomPropertySample) {
  oracle::Random rnd(42);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    const LaurentMatrix a = t % 2 == 0 ? rnd.symmetrized(n, 1 + t % 3) : rnd.constructed(n, 1 + (t / 2) % 2);
    const EvdResult r = analytic_evd(a);
    EXPECT_LT(r.residuals.reconstruction, 1e-7) << t;
    EXPECT_LE(r.N, landau(n) * a.den()) << t;
    EXPECT_LT(spectrum_gap(a, r, 40), 1e-8 * std::max(1.0, a.max_coeff_abs())) << t;
  }
}

TEST(Evd, RejectsNonParaHermitian) {
  LaurentMatrix a = oracle::r_example();
  a(0, 0) = FracLaurent::monomial(1.0, 1);
  EXPECT_THROW(analytic_evd(a), NotParaHermitian);
  EXPECT_THROW(analytic_evd(LaurentMatrix(2, 3)), ShapeError);
}

TEST(Evd, MaxPeriodBound) {
  EvdOptions o;
  o.max_period = 1;
  EXPECT_THROW(analytic_evd(oracle::r_example(), o), PeriodUndetected);
}

TEST(Evd, ConstantAndScalarInputs) {
  const EvdResult c = analytic_evd(LaurentMatrix::identity(3));
  EXPECT_EQ(c.N, 1);
  EXPECT_LT(c.residuals.reconstruction, 1e-14);
  LaurentMatrix s(1, 1);
  s(0, 0) = FracLaurent(1, -2, {1.0, 0.0, 3.0, 0.0, 1.0});
  const EvdResult r = analytic_evd(s);
  EXPECT_LT(max_coeff_diff(r.D(0, 0), s(0, 0)), 1e-12);
}

TEST(Evd, GaugeFixMakesFramesPeriodic) {
  // F_j = diag(exp(i 0.8 j / 16), 1): wrap mismatch exp(0.8 i) in the first slot
  std::vector<Eigen::MatrixXcd> frames;
  for (int j = 0; j <= 16; ++j) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(2, 2);
    f(0, 0) = std::polar(1.0, 0.8 * j / 16);
    frames.push_back(f);
  }
  const GaugeResult g = gauge_fix(frames);
  ASSERT_EQ(g.frames.size(), 16u);
  for (const auto& f : g.frames) EXPECT_LT((f - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-12);
}

TEST(Evd, CompletionOfParaIsometry) {
  oracle::Random rnd(43);
  const auto u = rnd.para_unitary(3, 2);
  const LaurentMatrix v = u.block(0, 0, 3, 1);
  const LaurentMatrix w = complete_para_unitary(v);
  EXPECT_TRUE(is_para_unitary(w).ok);
  EXPECT_LT(max_coeff_diff(w.block(0, 0, 3, 1), v), 1e-10);
  EXPECT_THROW(complete_para_unitary(scale(v, 2.0)), NotIsometry);
}
