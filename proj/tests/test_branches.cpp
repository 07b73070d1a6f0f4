#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "pherm/branches.hpp"
#include "pherm/error.hpp"

using namespace pherm;

TEST(Branches, LandauAgainstPartitionEnumeration) {
  for (int n = 1; n <= 15; ++n) EXPECT_EQ(landau(n), oracle::brute_landau(n)) << n;
  EXPECT_EQ(landau(5), 6);
  EXPECT_EQ(landau(7), 12);
  EXPECT_THROW(landau(0), RangeError);
  EXPECT_THROW(landau(21), RangeError);
}

TEST(Branches, AssignmentAgainstExhaustiveSearch) {
  oracle::Random rnd(31);
  for (int t = 0; t < 30; ++t) {
    const int n = rnd.integer(1, 6);
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = rnd.uniform(0.0, 1.0);
    const auto a = max_weight_assignment(w);
    double got = 0.0;
    for (int i = 0; i < n; ++i) got += w(i, a[i]);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    double best = -1.0;
    do {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w(i, p[i]);
      best = std::max(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_NEAR(got, best, 1e-12);
  }
}

TEST(Branches, ContinuationThroughACrossing) {
  // diag(cos theta, -cos theta) rotated by a constant unitary: branches cross
  // at theta = +-pi/2 and stay analytic through the crossing.
  oracle::Random rnd(32);
  const Eigen::MatrixXcd q = rnd.unitary(2);
  LaurentMatrix d(2, 2);
  d(0, 0) = FracLaurent(1, -1, {0.5, 0.0, 0.5});
  d(1, 1) = FracLaurent(1, -1, {-0.5, 0.0, -0.5});
  const LaurentMatrix a = LaurentMatrix::constant(q) * d * LaurentMatrix::constant(q.adjoint());
  const BranchSet b = continue_branches(a, 64, 2);
  // each branch is one analytic function, +cos or -cos throughout
  const double s = b.mu(0, 0) / std::cos(b.thetas[0]) > 0.0 ? 1.0 : -1.0;
  for (int j = 0; j < b.mu.cols(); ++j) {
    EXPECT_NEAR(b.mu(0, j), s * std::cos(b.thetas[j]), 1e-12);
    EXPECT_NEAR(b.mu(1, j), -s * std::cos(b.thetas[j]), 1e-12);
  }
}

TEST(Branches, PeriodPermutationOfR) {
  BranchSet b = continue_branches(oracle::r_example(), 64, 2);
  const auto info = detect_permutation(b);
  EXPECT_EQ(info.sigma, (std::vector<int>{1, 0}));
  EXPECT_EQ(info.L, 2);
  ASSERT_EQ(info.orbits.size(), 1u);
  EXPECT_EQ(info.alpha[0], 2);
  // mu(theta) is +-2 cos(theta / 2)
  for (int j = 0; j < b.mu.cols(); ++j) {
    const double ref = 2.0 * std::abs(std::cos(b.thetas[j] / 2.0));
    EXPECT_NEAR(std::abs(b.mu(0, j)), ref, 1e-12);
  }
  EXPECT_THROW(detect_permutation(b, 1), PeriodUndetected);
}

TEST(Branches, PermutationRefinementSplitsIdenticalCycles) {
  // two identical constant branches swapped by sigma: each is its own orbit
  std::vector<std::vector<bool>> same = {{true, true}, {true, true}};
  const auto s = refine_permutation({1, 0}, same);
  EXPECT_EQ(s, (std::vector<int>{0, 1}));
  const auto cycles = permutation_cycles({2, 0, 1, 3});
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(cycles[0].size(), 3u);
}
