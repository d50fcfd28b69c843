#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "idm/exact_extrema.hpp"
#include "idm/oracle.hpp"
#include "support/exact.hpp"

namespace {

using idm::ConcaveSummand;
using idm::CountVector;
using idm::IdmConfig;
using idm::testing::Rational;
using idm::testing::to_double;

ConcaveSummand entropy_for(const CountVector& c, const IdmConfig& cfg) {
  return ConcaveSummand::entropy(idm::EntropyKernel(c.total() + cfg.s()));
}

idm::Interval oracle_entropy(const CountVector& c, const IdmConfig& cfg, int resolution) {
  const idm::EntropyKernel k(c.total() + cfg.s());
  return idm::grid_extrema_lattice(
      idm::separable_lattice_objective(c, cfg, resolution, [&](double u) { return k.h(u); }),
      c.size(), idm::GridSpec{resolution});
}

TEST(ExactExtrema, ExampleOneMinimum) {
  const CountVector c({3, 6});
  const IdmConfig cfg(1.0);
  const auto r = idm::min_concave_sum(c, cfg, entropy_for(c, cfg));
  ASSERT_TRUE(r.vertex_index.has_value());
  EXPECT_EQ(*r.vertex_index, 1u);
  EXPECT_DOUBLE_EQ(r.u_star.u[0], 0.3);
  EXPECT_DOUBLE_EQ(r.u_star.u[1], 0.7);
  EXPECT_NEAR(r.value, to_double(Rational(7106, 12600)), 1e-12);
  EXPECT_EQ(r.t_star[1], 1.0);
}

TEST(ExactExtrema, ExampleOneMaximum) {
  const CountVector c({3, 6});
  const IdmConfig cfg(1.0);
  const auto r = idm::max_concave_sum(c, cfg, entropy_for(c, cfg));
  ASSERT_TRUE(r.m_star.has_value());
  EXPECT_EQ(*r.m_star, 1u);
  EXPECT_NEAR(r.u_star.u[0], 0.4, 1e-15);
  EXPECT_NEAR(r.u_star.u[1], 0.6, 1e-15);
  EXPECT_NEAR(r.value, to_double(Rational(7883, 12600)), 1e-12);
  const auto iv = idm::entropy_interval_exact(c, cfg);
  EXPECT_NEAR(iv.width(), to_double(Rational(37, 600)), 1e-12);
}

TEST(ExactExtrema, TieBreaksToSmallestIndex) {
  const CountVector c({5, 5});
  const IdmConfig cfg(1.0);
  const auto r = idm::min_concave_sum(c, cfg, entropy_for(c, cfg));
  EXPECT_EQ(*r.vertex_index, 0u);
  EXPECT_NEAR(r.u_star.u[0], 6.0 / 11.0, 1e-15);
  EXPECT_NEAR(r.u_star.u[1], 5.0 / 11.0, 1e-15);
}

TEST(ExactExtrema, UniformFromNoData) {
  const CountVector c({0, 0, 0});
  const IdmConfig cfg(1.0);
  const auto r = idm::max_concave_sum(c, cfg, entropy_for(c, cfg));
  for (double u : r.u_star.u) EXPECT_NEAR(u, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(*r.m_star, 3u);
}

TEST(ExactExtrema, CornerMaximum) {
  const CountVector c({1, 6});
  const IdmConfig cfg(1.0);
  const auto levels = idm::water_level_profile(c, cfg);
  EXPECT_DOUBLE_EQ(levels[0], 0.25);
  EXPECT_DOUBLE_EQ(levels[1], 0.5);
  const auto r = idm::max_concave_sum(c, cfg, entropy_for(c, cfg));
  EXPECT_NEAR(r.u_star.u[0], 0.25, 1e-15);
  EXPECT_NEAR(r.u_star.u[1], 0.75, 1e-15);
  ASSERT_TRUE(r.vertex_index.has_value());
  EXPECT_EQ(*r.vertex_index, 0u);
  const auto grid = oracle_entropy(c, cfg, 2000);
  const auto exact = idm::entropy_interval_exact(c, cfg);
  EXPECT_NEAR(exact.lower, grid.lower, 1e-9);
  EXPECT_NEAR(exact.upper, grid.upper, 1e-9);
}

TEST(ExactExtrema, SingleCategoryCollapses) {
  const auto iv = idm::entropy_interval_exact(CountVector({4}), IdmConfig(1.0));
  EXPECT_EQ(iv.lower, 0.0);
  EXPECT_EQ(iv.upper, 0.0);
}

TEST(ExactExtrema, SymmetricThreeCategories) {
  const CountVector c({2, 2, 2});
  const IdmConfig cfg(2.0);
  const auto exact = idm::entropy_interval_exact(c, cfg);
  const idm::EntropyKernel k(8.0);
  const double centre = 3.0 * k.h(1.0 / 3.0);
  EXPECT_TRUE(exact.contains(centre));
  // Both extremes sit on lattice points at resolution 6 (t in sixths).
  const auto grid = oracle_entropy(c, cfg, 600);
  EXPECT_NEAR(exact.lower, grid.lower, 1e-6);
  EXPECT_NEAR(exact.upper, grid.upper, 1e-6);
}

TEST(ExactExtrema, ValueMatchesWitness) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> count(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const CountVector c({double(count(rng)), double(count(rng)), double(count(rng))});
    const IdmConfig cfg(1.0 + trial % 2);
    const auto f = entropy_for(c, cfg);
    for (const auto& r : {idm::min_concave_sum(c, cfg, f), idm::max_concave_sum(c, cfg, f)}) {
      EXPECT_NEAR(r.value, f.sum(r.u_star.u), 1e-12);
      const auto again = idm::u_from_t(c, cfg, r.t_star);
      for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(again.u[i], r.u_star.u[i], 1e-15);
    }
  }
}

TEST(ExactExtrema, MatchesGridOracle) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(2, 3);
  std::uniform_int_distribution<int> count(0, 20);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> n(static_cast<std::size_t>(dim(rng)));
    for (double& x : n) x = count(rng);
    const CountVector c(n);
    const IdmConfig cfg(1.0 + trial % 2);
    const auto exact = idm::entropy_interval_exact(c, cfg);
    const auto grid = oracle_entropy(c, cfg, 300);
    EXPECT_TRUE(exact.contains(grid, 1e-12));
    EXPECT_NEAR(exact.lower, grid.lower, 1e-12);
    EXPECT_NEAR(exact.upper, grid.upper, 5e-3);
  }
}

TEST(ExactExtrema, WidthIsOrderSigma) {
  for (double n = 9; n <= 9 * 64; n *= 2) {
    const CountVector c({n / 3.0, 2.0 * n / 3.0});
    const IdmConfig cfg(1.0);
    const double sigma = idm::sigma_of(c, cfg);
    const auto exact = idm::entropy_interval_exact(c, cfg);
    const auto f = entropy_for(c, cfg);
    double bound = 0.0;
    for (double u = 0.0; u <= 1.0; u += 0.01) bound = std::max(bound, std::abs(f.derivative(u)));
    EXPECT_LE(exact.width() / sigma, 2.0 * bound);
  }
}

TEST(ExactExtrema, GrowsWithStrength) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> count(0, 15);
  for (int trial = 0; trial < 100; ++trial) {
    const CountVector c({double(count(rng)), double(count(rng)), double(count(rng))});
    const auto small = idm::entropy_interval_exact(c, IdmConfig(1.0));
    const auto large = idm::entropy_interval_exact(c, IdmConfig(2.0));
    EXPECT_GE(large.width(), small.width() - 1e-12);
  }
}

TEST(ExactExtrema, WaterLevelMinimumIsGlobal) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> count(0.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> n(5);
    for (double& x : n) x = count(rng);
    const CountVector c(n);
    const auto levels = idm::water_level_profile(c, IdmConfig(1.5));
    double running = levels[0];
    std::size_t m = 0;
    while (m + 1 < levels.size() && levels[m + 1] < running) running = levels[++m];
    EXPECT_DOUBLE_EQ(running, *std::min_element(levels.begin(), levels.end()));
  }
}

TEST(ExactExtrema, ConvexDispatch) {
  const ConcaveSummand square([](double u) { return u * u; }, [](double u) { return 2.0 * u; },
                              idm::Curvature::convex);
  const CountVector c({1, 4, 2});
  const IdmConfig cfg(2.0);
  const auto lo = idm::min_concave_sum(c, cfg, square);
  const auto hi = idm::max_concave_sum(c, cfg, square);
  const auto grid = idm::grid_extrema(
      [&](std::span<const double> u) { return square.sum(u); }, 3, c, cfg, idm::GridSpec{200});
  EXPECT_NEAR(lo.value, grid.lower, 1e-12);
  EXPECT_NEAR(hi.value, grid.upper, 1e-12);
}

TEST(ConcaveSummand, RejectsWrongCurvature) {
  EXPECT_THROW(ConcaveSummand([](double u) { return u * u; }, [](double u) { return 2.0 * u; },
                              idm::Curvature::concave),
               std::invalid_argument);
  EXPECT_THROW(ConcaveSummand([](double u) { return -u * u; }, [](double u) { return -2.0 * u; },
                              idm::Curvature::convex),
               std::invalid_argument);
}

TEST(ExactExtrema, ZeroStrengthLimit) {
  const CountVector c({3, 6});
  const auto cfg = IdmConfig::zero_strength_limit();
  const auto iv = idm::entropy_interval_exact(c, cfg);
  EXPECT_NEAR(iv.width(), 0.0, 1e-15);
}

}  // namespace
