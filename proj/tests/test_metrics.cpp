#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pballoc/error.hpp"
#include "pballoc/report/metrics.hpp"

using namespace pballoc;
using namespace pballoc::report;

TEST(Metrics, ChangePct) {
  EXPECT_DOUBLE_EQ(*change_pct(100, 68), -32.0);
  EXPECT_DOUBLE_EQ(*change_pct(50, 75), 50.0);
  EXPECT_FALSE(change_pct(0, 5).has_value());
}

TEST(Metrics, ReductionRate) {
  const auto r = reduction_rate(100, 25, 2016, 2018);
  EXPECT_NEAR(r.rate, -0.5, 1e-15);
  EXPECT_FALSE(r.already_compliant);
  EXPECT_NEAR(100 * std::pow(1 + r.rate, 2), 25, 1e-12);

  const auto up = reduction_rate(1, 2, 2016, 2017);
  EXPECT_NEAR(up.rate, 1.0, 1e-15);
  EXPECT_TRUE(up.already_compliant);

  EXPECT_THROW(reduction_rate(0, 1, 2016, 2050), Error);
  EXPECT_THROW(reduction_rate(1, 1, 2050, 2050), Error);
}

TEST(Metrics, OverUnder) {
  EXPECT_DOUBLE_EQ(over_under(244, 496), 244.0 / 496.0);
  EXPECT_THROW(over_under(1, 0), Error);
}

TEST(Gini, EqualVectorIsZero) {
  const std::vector<double> v(17, 3.25);
  EXPECT_NEAR(lorenz_gini(v).gini, 0.0, 1e-15);
}

TEST(Gini, SingleHolder) {
  for (std::size_t n : {1u, 2u, 5u, 100u}) {
    std::vector<double> v(n, 0.0);
    v[n / 2] = 42.0;
    EXPECT_NEAR(lorenz_gini(v).gini, (n - 1.0) / n, 1e-15) << n;
  }
}

TEST(Gini, MatchesPairwiseOracle) {
  std::mt19937_64 rng(2016);
  std::lognormal_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 60);
    for (auto& x : v) x = dist(rng);
    if (trial % 7 == 0 && v.size() > 1) v[0] = 0.0;
    EXPECT_NEAR(lorenz_gini(v).gini, oracle::gini_pairwise(v), 1e-12) << trial;
  }
}

TEST(Gini, ScaleAndOrderInvariant) {
  std::vector<double> v{5, 1, 9, 3, 3, 0.5};
  const double g = lorenz_gini(v).gini;
  std::vector<double> scaled;
  for (double x : v) scaled.push_back(x * 1000);
  std::reverse(scaled.begin(), scaled.end());
  EXPECT_NEAR(lorenz_gini(scaled).gini, g, 1e-15);
}

TEST(Gini, CurveEndpoints) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto r = lorenz_gini(v);
  ASSERT_EQ(r.curve.size(), 5u);
  EXPECT_EQ(r.curve.front().population_share, 0.0);
  EXPECT_EQ(r.curve.front().value_share, 0.0);
  EXPECT_EQ(r.curve.back().population_share, 1.0);
  EXPECT_EQ(r.curve.back().value_share, 1.0);
  EXPECT_DOUBLE_EQ(r.curve[1].value_share, 0.1);
  for (std::size_t k = 1; k < r.curve.size(); ++k)
    EXPECT_GE(r.curve[k].value_share, r.curve[k - 1].value_share);
  // Top quarter (the 4) holds 40 %, so half needs two holders.
  EXPECT_EQ(r.top_half.population_share, 0.5);
  EXPECT_DOUBLE_EQ(r.top_half.value_share, 0.7);
}

TEST(Gini, InvalidInput) {
  EXPECT_THROW(lorenz_gini(std::vector<double>{}), Error);
  EXPECT_THROW(lorenz_gini(std::vector<double>{0, 0}), Error);
  EXPECT_THROW(lorenz_gini(std::vector<double>{1, -1}), Error);
}

TEST(Rounding, FixedDecimals) {
  EXPECT_EQ(round_fixed(496.0, 0), "496");
  EXPECT_EQ(round_fixed(0.49193548, 2), "0.49");
  EXPECT_EQ(round_fixed(28.35 / 259.0, 2), "0.11");
  EXPECT_EQ(round_fixed(-0.0001, 2), "0.00");
  EXPECT_EQ(round_fixed(-0.4, 0), "0");
  EXPECT_EQ(round_fixed(2.5, 0), "2");  // exact binary halves go to even
  EXPECT_EQ(round_fixed(0.125, 2), "0.12");
  EXPECT_EQ(round_fixed(1.15, 1), "1.1");  // 1.15 is stored just below the half
}
