#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "idm/exact_extrema.hpp"
#include "idm/oracle.hpp"
#include "support/exact.hpp"

namespace {

using idm::ContingencyCounts;
using idm::CountVector;
using idm::GridSpec;
using idm::IdmConfig;

TEST(Compositions, CountAndOrder) {
  EXPECT_EQ(idm::composition_count(2, 3), 6u);
  EXPECT_EQ(idm::composition_count(400, 4), 10'827'401u);
  EXPECT_EQ(idm::composition_count(7, 1), 1u);
  EXPECT_EQ(idm::composition_count(1'000'000, 40), std::numeric_limits<std::uint64_t>::max());
  std::vector<std::vector<int>> seen;
  idm::for_each_composition(2, 3, [&](std::span<const int> k) { seen.emplace_back(k.begin(), k.end()); });
  const std::vector<std::vector<int>> expected{{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                               {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  EXPECT_EQ(seen, expected);
}

TEST(Compositions, EnumeratesEachExactlyOnce) {
  for (std::size_t d = 1; d <= 5; ++d) {
    for (int r : {0, 1, 5, 9}) {
      std::uint64_t n = 0;
      std::set<std::vector<int>> distinct;
      idm::for_each_composition(r, d, [&](std::span<const int> k) {
        int sum = 0;
        for (int x : k) {
          EXPECT_GE(x, 0);
          sum += x;
        }
        EXPECT_EQ(sum, r);
        distinct.emplace(k.begin(), k.end());
        ++n;
      });
      EXPECT_EQ(n, idm::composition_count(r, d));
      EXPECT_EQ(distinct.size(), n);
    }
  }
}

TEST(GridExtrema, ExampleOneTargets) {
  const CountVector c({3, 6});
  const IdmConfig cfg(1.0);
  const idm::EntropyKernel k(10.0);
  const auto grid = idm::grid_extrema(
      [&](std::span<const double> u) { return k.h(u[0]) + k.h(u[1]); }, 2, c, cfg, GridSpec{1000});
  EXPECT_NEAR(grid.lower, 0.5639, 2e-3);
  EXPECT_NEAR(grid.upper, 0.6256, 2e-3);
}

TEST(GridExtrema, ConstantAndLinear) {
  const CountVector c({1, 2, 3});
  const IdmConfig cfg(2.0);
  const auto constant =
      idm::grid_extrema([](std::span<const double>) { return 4.5; }, 3, c, cfg, GridSpec{10});
  EXPECT_EQ(constant, idm::Interval(4.5, 4.5));
  // Linear in t: c . t = (c . ((n+s) u - n)) / s.
  const std::vector<double> coef{0.3, -1.0, 2.0};
  const auto linear = idm::grid_extrema(
      [&](std::span<const double> u) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 3; ++i) acc += coef[i] * ((8.0 * u[i] - c[i]) / 2.0);
        return acc;
      },
      3, c, cfg, GridSpec{7});
  EXPECT_NEAR(linear.upper, 2.0, 1e-12);
  EXPECT_NEAR(linear.lower, -1.0, 1e-12);
}

TEST(GridExtrema, RefusesOversizedLattices) {
  const CountVector c(std::vector<double>(12, 1.0));
  EXPECT_THROW(idm::grid_extrema([](std::span<const double>) { return 0.0; }, 12, c, IdmConfig(),
                                 GridSpec{400, 1'000'000}),
               std::length_error);
  EXPECT_THROW(idm::grid_extrema([](std::span<const double>) { return 0.0; }, 3, c, IdmConfig(),
                                 GridSpec{4}),
               std::invalid_argument);
  EXPECT_THROW(idm::grid_extrema_lattice([](std::span<const int>) { return 0.0; }, 2, GridSpec{0}),
               std::invalid_argument);
}

TEST(GridExtrema, LatticeFormAgreesWithPointForm) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> count(0, 12);
  for (int trial = 0; trial < 10; ++trial) {
    const CountVector c({double(count(rng)), double(count(rng)), double(count(rng))});
    const IdmConfig cfg(1.0 + trial % 2);
    const idm::EntropyKernel k(c.total() + cfg.s());
    const auto point = idm::grid_extrema(
        [&](std::span<const double> u) { return k.h(u[0]) + k.h(u[1]) + k.h(u[2]); }, 3, c, cfg,
        GridSpec{60});
    const auto lattice = idm::grid_extrema_lattice(
        idm::separable_lattice_objective(c, cfg, 60, [&](double u) { return k.h(u); }), 3,
        GridSpec{60});
    EXPECT_NEAR(point.lower, lattice.lower, 1e-13);
    EXPECT_NEAR(point.upper, lattice.upper, 1e-13);
  }
}

TEST(GridExtrema, RefinementConverges) {
  const CountVector c({2, 7, 4});
  const IdmConfig cfg(2.0);
  const idm::EntropyKernel k(15.0);
  const auto f = idm::ConcaveSummand::entropy(k);
  double lipschitz = 0.0;
  for (double u = 0.0; u <= 1.0; u += 1e-3) lipschitz = std::max(lipschitz, std::abs(f.derivative(u)));
  lipschitz *= idm::sigma_of(c, cfg) * 3.0;
  for (int r : {5, 10, 20, 40}) {
    const auto coarse = idm::grid_extrema_lattice(
        idm::separable_lattice_objective(c, cfg, r, [&](double u) { return k.h(u); }), 3, GridSpec{r});
    const auto fine = idm::grid_extrema_lattice(
        idm::separable_lattice_objective(c, cfg, 2 * r, [&](double u) { return k.h(u); }), 3,
        GridSpec{2 * r});
    // Every coarse point is also a fine point.
    EXPECT_TRUE(fine.contains(coarse));
    EXPECT_TRUE(idm::Interval(coarse.lower - lipschitz / r, coarse.upper + lipschitz / r).contains(fine));
  }
}

TEST(ProductGrid, SubsetOfFullGrid) {
  const ContingencyCounts tbl({{3, 1}, {1, 3}});
  const IdmConfig cfg(1.0);
  const auto full = idm::grid_extrema_lattice(idm::mi_lattice_objective(tbl, cfg, 36), 4, GridSpec{36});
  const auto product = idm::product_grid_extrema_lattice(idm::mi_lattice_objective(tbl, cfg, 36), 2,
                                                         2, GridSpec{6});
  EXPECT_TRUE(full.contains(product));
  const auto bounds = idm::mi_interval_bounds(tbl, cfg);
  EXPECT_TRUE(bounds.conservative().contains(product));
}

TEST(ProductGrid, PointFormAgreesWithLatticeForm) {
  const ContingencyCounts tbl({{2, 0, 1}, {1, 4, 2}});
  const IdmConfig cfg(1.5);
  const auto point = idm::product_grid_extrema(
      [&](std::span<const double> u) { return idm::expected_mi_at(tbl, cfg, u); }, 2, 3, tbl, cfg,
      GridSpec{8});
  const auto lattice =
      idm::product_grid_extrema_lattice(idm::mi_lattice_objective(tbl, cfg, 64), 2, 3, GridSpec{8});
  EXPECT_NEAR(point.lower, lattice.lower, 1e-13);
  EXPECT_NEAR(point.upper, lattice.upper, 1e-13);
}

TEST(ProductGrid, SingleCellIsAPoint) {
  const ContingencyCounts tbl(1, 1, {4.0});
  const auto iv = idm::product_grid_extrema([](std::span<const double>) { return 1.25; }, 1, 1, tbl,
                                            IdmConfig(), GridSpec{5});
  EXPECT_EQ(iv, idm::Interval(1.25, 1.25));
  EXPECT_THROW(idm::product_grid_extrema([](std::span<const double>) { return 0.0; }, 2, 1, tbl,
                                         IdmConfig(), GridSpec{5}),
               std::invalid_argument);
}

TEST(Dirichlet, SymmetricMean) {
  const std::vector<double> params{1.0, 1.0};
  const auto draws = idm::dirichlet_draws(params, idm::McSpec{100'000, 1});
  double mean = 0.0;
  for (const auto& p : draws) mean += p[0];
  EXPECT_NEAR(mean / draws.size(), 0.5, 0.005);
}

TEST(Dirichlet, ExampleOneCornerMean) {
  const std::vector<double> params{3.0, 7.0};
  const auto draws = idm::dirichlet_draws(params, idm::McSpec{100'000, 2});
  double m0 = 0.0;
  double m1 = 0.0;
  for (const auto& p : draws) {
    m0 += p[0];
    m1 += p[1];
    ASSERT_TRUE(idm::validate_simplex(p.values()));
  }
  EXPECT_NEAR(m0 / draws.size(), 0.3, 0.005);
  EXPECT_NEAR(m1 / draws.size(), 0.7, 0.005);
}

TEST(Dirichlet, SmallShapesAndMoments) {
  // Var[pi_1] = a_1 (a_0 - a_1) / (a_0^2 (a_0 + 1)).
  const std::vector<double> params{0.2, 0.5, 1.3};
  const auto draws = idm::dirichlet_draws(params, idm::McSpec{200'000, 3});
  const auto st = idm::mc_functional_stats(draws, [](const idm::SimplexPoint& p) { return p[0]; });
  EXPECT_NEAR(st.mean, 0.1, 4.0 * st.stderr_mean);
  const double var = 0.2 * 1.8 / (4.0 * 3.0);
  EXPECT_NEAR(st.variance, var, 4.0 * st.stderr_variance);
}

TEST(Dirichlet, ReproducibleForSeed) {
  const std::vector<double> params{0.7, 2.0, 5.5};
  const auto a = idm::dirichlet_draws(params, idm::McSpec{1000, 77});
  const auto b = idm::dirichlet_draws(params, idm::McSpec{1000, 77});
  const auto c = idm::dirichlet_draws(params, idm::McSpec{1000, 78});
  bool all_same = true;
  bool any_diff = false;
  for (std::size_t n = 0; n < a.size(); ++n) {
    for (std::size_t i = 0; i < 3; ++i) {
      all_same = all_same && a[n][i] == b[n][i];
      any_diff = any_diff || a[n][i] != c[n][i];
    }
  }
  EXPECT_TRUE(all_same);
  EXPECT_TRUE(any_diff);
}

TEST(Dirichlet, RejectsBadParameters) {
  EXPECT_THROW(idm::dirichlet_draws(std::vector<double>{1.0, 0.0}, idm::McSpec{}), std::invalid_argument);
  EXPECT_THROW(idm::dirichlet_draws(std::vector<double>{}, idm::McSpec{}), std::invalid_argument);
  EXPECT_THROW(idm::dirichlet_draws(std::vector<double>{1.0}, idm::McSpec{0, 0}), std::invalid_argument);
}

TEST(McStats, EntropyMeanMatchesExactLowerBound) {
  const std::vector<double> params{3.0, 7.0};
  const auto draws = idm::dirichlet_draws(params, idm::McSpec{100'000, 4});
  const auto st = idm::mc_functional_stats(
      draws, [](const idm::SimplexPoint& p) { return idm::shannon_entropy(p.values()); });
  const double exact = idm::testing::to_double(idm::testing::Rational(7106, 12600));
  EXPECT_NEAR(st.mean, exact, 3.0 * st.stderr_mean);
}

TEST(McStats, ConstantFunctionalAndErrors) {
  const std::vector<double> params{2.0, 2.0};
  const auto draws = idm::dirichlet_draws(params, idm::McSpec{100, 5});
  const auto st = idm::mc_functional_stats(draws, [](const idm::SimplexPoint&) { return 3.0; });
  EXPECT_EQ(st.variance, 0.0);
  EXPECT_EQ(st.mean, 3.0);
  EXPECT_THROW(idm::mc_functional_stats(std::span(draws).first(1),
                                        [](const idm::SimplexPoint&) { return 0.0; }),
               std::invalid_argument);
}

TEST(Functionals, EntropyAndInformation) {
  const std::vector<double> p{0.5, 0.5, 0.0};
  EXPECT_NEAR(idm::shannon_entropy(p), std::log(2.0), 1e-15);
  const std::vector<double> independent{0.06, 0.14, 0.24, 0.56};
  EXPECT_NEAR(idm::mutual_information(independent, 2, 2), 0.0, 1e-15);
  const std::vector<double> diagonal{0.5, 0.0, 0.0, 0.5};
  EXPECT_NEAR(idm::mutual_information(diagonal, 2, 2), std::log(2.0), 1e-15);
  EXPECT_THROW(idm::mutual_information(diagonal, 3, 2), std::invalid_argument);
}

}  // namespace
