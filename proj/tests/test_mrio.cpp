#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pballoc/error.hpp"
#include "pballoc/io/fixture.hpp"
#include "pballoc/linalg.hpp"
#include "pballoc/mrio.hpp"

using namespace pballoc;

namespace {

// Two regions, one sector each. A = [[0.2, 0.2], [0.1, 0.3]], so
// L = [[0.7, 0.2], [0.1, 0.8]] / 0.54 and q = [0.5, 0.5].
MrioTable two_region_table() {
  MrioTable t;
  t.regions = {"N", "S"};
  t.sectors = {"goods"};
  t.z = Matrix(2, 2);
  t.z(0, 0) = 20;
  t.z(0, 1) = 40;
  t.z(1, 0) = 10;
  t.z(1, 1) = 60;
  t.y = Matrix(2, 2);
  t.y(0, 0) = 30;
  t.y(0, 1) = 10;
  t.y(1, 0) = 20;
  t.y(1, 1) = 110;
  t.x = {100, 200};
  return t;
}

ExtensionAccount two_region_extension() {
  return ExtensionAccount{"co2", "kt CO2", {50, 100}, {5, 7}};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Structural;
}

io::Fixture random_fixture(std::uint64_t seed, std::size_t regions, std::size_t sectors) {
  io::FixtureSpec spec;
  spec.seed = seed;
  spec.n_regions = regions;
  spec.n_sectors = sectors;
  spec.trade_intensity = 0.35;
  return io::generate_fixture(spec);
}

}  // namespace

TEST(Linalg, LuSolvesAndTransposedSolves) {
  Matrix m(3, 3);
  const double vals[] = {0, 2, 1, 1, 1, 1, 4, 0, 3};  // zero leading pivot forces a swap
  std::copy(std::begin(vals), std::end(vals), m.data().begin());
  const LuFactorization lu(m);
  const Vector b{3, 3, 7};
  const Vector x = lu.solve(b);
  const Vector back = multiply(m, x);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[i], b[i], 1e-14);

  const Vector z = lu.solve_transposed(b);
  const Vector back_t = multiply(std::span<const double>(z), m);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back_t[i], b[i], 1e-14);
}

TEST(Linalg, SingularMatrixIsRejected) {
  Matrix m(2, 2, 1.0);
  EXPECT_EQ(kind_of([&] { LuFactorization lu(m); }), ErrorKind::NonProductiveEconomy);
}

TEST(Mrio, TechnicalCoefficientsZeroOutputColumn) {
  MrioTable t = two_region_table();
  t.x[1] = 0.0;
  t.z(0, 1) = t.z(1, 1) = 0.0;
  const Matrix a = technical_coefficients(t);
  EXPECT_EQ(a(0, 1), 0.0);
  EXPECT_EQ(a(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(a(0, 0), 0.2);
}

TEST(Mrio, LeontiefInverseHandExample) {
  const Matrix l = leontief_inverse(technical_coefficients(two_region_table()));
  EXPECT_NEAR(l(0, 0), 0.7 / 0.54, 1e-14);
  EXPECT_NEAR(l(0, 1), 0.2 / 0.54, 1e-14);
  EXPECT_NEAR(l(1, 0), 0.1 / 0.54, 1e-14);
  EXPECT_NEAR(l(1, 1), 0.8 / 0.54, 1e-14);
}

TEST(Mrio, LeontiefInverseMatchesPowerSeries) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fx = random_fixture(seed, 4, 3);
    const Matrix a = technical_coefficients(fx.table);
    const Matrix l = leontief_inverse(a);
    const auto ref = oracle::leontief_power_series(oracle::to_dense(a));
    for (std::size_t i = 0; i < l.rows(); ++i)
      for (std::size_t j = 0; j < l.cols(); ++j)
        EXPECT_LE(oracle::rel_err(l(i, j), ref[i][j]), 1e-9) << "seed " << seed;
  }
}

TEST(Mrio, NonProductiveEconomyIsReported) {
  // A column sum above 1 alone is not enough; this one has spectral radius 1.1.
  Matrix a(2, 2);
  a(0, 0) = 1.1;
  a(1, 0) = 0.2;
  a(1, 1) = 0.5;
  try {
    leontief_inverse(a);
    FAIL() << "expected NonProductiveEconomy";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonProductiveEconomy);
  }
}

TEST(Mrio, NegativeCoefficientIsInvalid) {
  Matrix a(2, 2);
  a(0, 1) = -0.1;
  EXPECT_EQ(kind_of([&] { leontief_inverse(a); }), ErrorKind::InvalidInput);
}

TEST(Mrio, FootprintHandExample) {
  const auto fp = footprint_accounts(two_region_table(), two_region_extension());
  EXPECT_NEAR(fp.e(0, 0), 0.5 * 25 / 0.54, 1e-12);
  EXPECT_NEAR(fp.e(0, 1), 0.5 * 29 / 0.54, 1e-12);
  EXPECT_NEAR(fp.e(1, 0), 0.5 * 19 / 0.54, 1e-12);
  EXPECT_NEAR(fp.e(1, 1), 0.5 * 89 / 0.54, 1e-12);
  EXPECT_NEAR(fp.pba[0], 50 + 5, 1e-12);
  EXPECT_NEAR(fp.pba[1], 100 + 7, 1e-12);
  EXPECT_NEAR(fp.cba[0], 22 / 0.54 + 5, 1e-12);
  EXPECT_NEAR(fp.cba[1], 59 / 0.54 + 7, 1e-12);
  EXPECT_EQ(fp.sectoral_pba, (Vector{50, 100}));
  // q'L = [0.4, 0.5] / 0.54; Y i = [40, 130].
  EXPECT_NEAR(fp.sectoral_cba[0], 0.4 / 0.54 * 40, 1e-12);
  EXPECT_NEAR(fp.sectoral_cba[1], 0.5 / 0.54 * 130, 1e-12);
}

TEST(Mrio, FootprintUnitConversion) {
  const auto kt = footprint_accounts(two_region_table(), two_region_extension());
  const auto t = footprint_accounts(two_region_table(), two_region_extension(), "t CO2");
  EXPECT_EQ(t.unit, "t CO2");
  EXPECT_NEAR(t.cba[0], kt.cba[0] * 1000, 1e-9);
  EXPECT_EQ(kind_of([] { footprint_accounts(two_region_table(), two_region_extension(), "m3"); }),
            ErrorKind::Configuration);
}

TEST(Mrio, PressureOnZeroOutputIndustryIsRejected) {
  MrioTable t = two_region_table();
  t.x[1] = 0.0;
  t.z(0, 1) = t.z(1, 1) = 0.0;
  t.z(1, 0) = 0.0;
  t.y(1, 0) = t.y(1, 1) = 0.0;
  t.x[0] = 20 + 30 + 10;
  auto ext = two_region_extension();
  EXPECT_EQ(kind_of([&] { footprint_accounts(t, ext); }), ErrorKind::InvalidInput);
}

TEST(Mrio, UnbalancedTableNamesTheRow) {
  MrioTable t = two_region_table();
  t.x[1] = 250;
  try {
    validate(t);
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    EXPECT_NE(std::string(e.what()).find("S/goods"), std::string::npos) << e.what();
  }
}

TEST(Mrio, ShapeErrorsAreStructural) {
  MrioTable t = two_region_table();
  t.y = Matrix(2, 3);
  EXPECT_EQ(kind_of([&] { validate(t); }), ErrorKind::Structural);
  auto ext = two_region_extension();
  ext.f_hh = {1.0};
  EXPECT_EQ(kind_of([&] { validate(ext, two_region_table()); }), ErrorKind::Structural);
}

TEST(Mrio, FootprintsMatchBruteForceOracle) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto fx = random_fixture(seed, 3, 3);
    const LeontiefModel model(fx.table);
    for (const auto& ext : fx.extensions) {
      const auto fp = model.footprint(ext);
      const auto ref = oracle::footprint(fx.table, ext);
      for (std::size_t r = 0; r < fx.table.n_regions(); ++r) {
        EXPECT_LE(oracle::rel_err(fp.pba[r], ref.pba[r]), 1e-9);
        EXPECT_LE(oracle::rel_err(fp.cba[r], ref.cba[r]), 1e-9);
        for (std::size_t s = 0; s < fx.table.n_regions(); ++s)
          EXPECT_LE(oracle::rel_err(fp.e(r, s), ref.e[r][s]), 1e-9);
      }
    }
  }
}

TEST(Mrio, ConservationAcrossPerspectives) {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const auto fx = random_fixture(seed, 4, 2);
    for (const auto& ext : fx.extensions) {
      const auto fp = footprint_accounts(fx.table, ext);
      const double direct = std::accumulate(ext.f.begin(), ext.f.end(), 0.0) +
                            std::accumulate(ext.f_hh.begin(), ext.f_hh.end(), 0.0);
      const double pba = std::accumulate(fp.pba.begin(), fp.pba.end(), 0.0);
      const double cba = std::accumulate(fp.cba.begin(), fp.cba.end(), 0.0);
      EXPECT_LE(oracle::rel_err(pba, direct), 1e-9);
      EXPECT_LE(oracle::rel_err(cba, direct), 1e-9);
      // Sectoral CBA redistributes the industry total across final-demand rows.
      const double sectoral = std::accumulate(fp.sectoral_cba.begin(), fp.sectoral_cba.end(), 0.0);
      const double industry = std::accumulate(ext.f.begin(), ext.f.end(), 0.0);
      EXPECT_LE(oracle::rel_err(sectoral, industry), 1e-9);
    }
  }
}

TEST(Mrio, NoTradeMeansDiagonalFlows) {
  io::FixtureSpec spec;
  spec.trade_intensity = 0.0;
  spec.n_regions = 3;
  spec.seed = 5;
  const auto fx = io::generate_fixture(spec);
  const auto fp = footprint_accounts(fx.table, fx.extensions.front());
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t s = 0; s < 3; ++s) {
      if (r != s) {
        EXPECT_EQ(fp.e(r, s), 0.0);
      }
    }
    EXPECT_NEAR(fp.pba[r], fp.cba[r], 1e-9 * fp.pba[r]);
  }
}

TEST(Mrio, DoublingFinalDemandDoublesEmbodiedFlows) {
  const auto base = two_region_table();
  auto doubled = base;
  for (auto& v : doubled.z.data()) v *= 2;
  for (auto& v : doubled.y.data()) v *= 2;
  for (auto& v : doubled.x) v *= 2;
  auto ext = two_region_extension();
  auto ext2 = ext;
  for (auto& v : ext2.f) v *= 2;
  const auto a = footprint_accounts(base, ext);
  const auto b = footprint_accounts(doubled, ext2);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(b.e.data()[i], 2 * a.e.data()[i], 1e-12);
}

TEST(Mrio, PerCapitaRules) {
  const Vector values{10, 0, 5};
  const Vector pop{2, 0, 5};
  EXPECT_EQ(per_capita(values, pop), (Vector{5, 0, 1}));
  const Vector bad_pop{2, 1, 0};
  EXPECT_EQ(kind_of([&] { per_capita(values, bad_pop); }), ErrorKind::DegenerateEntity);
}

TEST(Mrio, NormalizedComparisonModes) {
  const Vector values{10, 40};
  const Vector pop{10, 20};  // per capita 1 and 2
  const Vector global = normalized_comparison(values, pop, AverageMode::GlobalPopulationWeighted);
  EXPECT_NEAR(global[0], 1.0 / (50.0 / 30.0), 1e-15);
  const Vector mean = normalized_comparison(values, pop, AverageMode::CountryMean);
  EXPECT_NEAR(mean[1], 2.0 / 1.5, 1e-15);
  const std::size_t subset[] = {1};
  const Vector sub = normalized_comparison(values, pop, AverageMode::SubsetMean, subset);
  EXPECT_NEAR(sub[0], 0.5, 1e-15);
}
