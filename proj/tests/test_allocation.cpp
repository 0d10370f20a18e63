#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "pballoc/allocation.hpp"
#include "pballoc/budgets.hpp"
#include "pballoc/error.hpp"
#include "pballoc/io/fixture.hpp"

using namespace pballoc;

namespace {

EntityStats entity(std::string id, double pop, double va, double emp, double co2) {
  EntityStats s;
  s.entity_id = std::move(id);
  s.population = pop;
  s.value_added = va;
  s.employment = emp;
  s.pressures["co2/cba"] = co2;
  return s;
}

std::vector<EntityStats> three_countries() {
  return {entity("A", 10, 400, 5, 30), entity("B", 30, 300, 15, 60), entity("C", 60, 300, 30, 10)};
}

BudgetSpec budget(double value) { return BudgetSpec{Boundary::ClimateCo2, value, "Gt CO2"}; }

double total(const Vector& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Structural;
}

std::vector<io::Fixture> fixtures() {
  std::vector<io::Fixture> out;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    io::FixtureSpec spec;
    spec.seed = seed;
    spec.n_regions = 2 + seed % 3;
    spec.n_sectors = 1 + seed % 3;
    out.push_back(io::generate_fixture(spec));
  }
  return out;
}

void expect_valid(const AllocationShares& s) {
  EXPECT_NEAR(total(s.shares), 1.0, kShareSumTolerance);
  for (double v : s.shares) EXPECT_GE(v, 0.0);
  EXPECT_NO_THROW(validate(s));
}

}  // namespace

TEST(Allocation, EpcIsPopulationShare) {
  const auto stats = three_countries();
  const auto s = epc_shares(stats);
  EXPECT_DOUBLE_EQ(s.share_of("A"), 0.1);
  EXPECT_DOUBLE_EQ(s.share_of("C"), 0.6);
  EXPECT_EQ(kind_of([&] { s.share_of("Z"); }), ErrorKind::Structural);
}

TEST(Allocation, GfIsPressureShare) {
  const auto stats = three_countries();
  const auto s = gf_shares(stats, "co2/cba");
  EXPECT_DOUBLE_EQ(s.share_of("B"), 0.6);
  EXPECT_EQ(s.pressure_field, "co2/cba");
}

TEST(Allocation, GfErrors) {
  auto stats = three_countries();
  EXPECT_EQ(kind_of([&] { gf_shares(stats, "water/cba"); }), ErrorKind::Structural);
  stats[1].pressures["co2/cba"] = -1.0;
  EXPECT_EQ(kind_of([&] { gf_shares(stats, "co2/cba"); }), ErrorKind::InvalidPressure);
  for (auto& s : stats) s.pressures["co2/cba"] = 0.0;
  EXPECT_EQ(kind_of([&] { gf_shares(stats, "co2/cba"); }), ErrorKind::DegenerateInput);
}

TEST(Allocation, ApFavoursLowProductivity) {
  const auto stats = three_countries();
  const auto s = ap_shares(stats);
  // Weights emp * (va/emp)^-0.5 = sqrt(emp^3 / va).
  const double w[] = {std::sqrt(125.0 / 400.0), std::sqrt(3375.0 / 300.0),
                      std::sqrt(27000.0 / 300.0)};
  const double sum = w[0] + w[1] + w[2];
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(s.shares[i], w[i] / sum, 1e-15);
  EXPECT_EQ(s.alpha, 0.5);
}

TEST(Allocation, ApAlphaZeroIsEmploymentShare) {
  const auto stats = three_countries();
  const auto s = ap_shares(stats, 0.0);
  EXPECT_NEAR(s.share_of("A"), 0.1, 1e-15);
  EXPECT_NEAR(s.share_of("C"), 0.6, 1e-15);
}

TEST(Allocation, ApMissingData) {
  auto stats = three_countries();
  stats[2].value_added = 0.0;
  EXPECT_EQ(kind_of([&] { ap_shares(stats); }), ErrorKind::DegenerateEntity);
  const auto s = ap_shares(stats, 0.5, MissingApData::Redistribute);
  EXPECT_EQ(s.share_of("C"), 0.0);
  expect_valid(s);
  stats[2].value_added = -1.0;
  EXPECT_EQ(kind_of([&] { ap_shares(stats, 0.5, MissingApData::Redistribute); }),
            ErrorKind::InvalidInput);
}

TEST(Allocation, VaIsValueAddedShare) {
  const auto s = va_shares(three_countries());
  EXPECT_DOUBLE_EQ(s.share_of("A"), 0.4);
}

TEST(Allocation, BlendIsConvexCombination) {
  const auto stats = three_countries();
  const auto epc = epc_shares(stats);
  const auto gf = gf_shares(stats, "co2/cba");
  const auto ap = ap_shares(stats);
  const auto ba = blended_shares(epc, gf, ap);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(ba.shares[i], (epc.shares[i] + gf.shares[i] + ap.shares[i]) / 3.0, 1e-15);
    const double lo = std::min({epc.shares[i], gf.shares[i], ap.shares[i]});
    const double hi = std::max({epc.shares[i], gf.shares[i], ap.shares[i]});
    EXPECT_GE(ba.shares[i], lo - 1e-16);
    EXPECT_LE(ba.shares[i], hi + 1e-16);
  }
  ASSERT_EQ(ba.blend.size(), 3u);
  EXPECT_EQ(ba.approach, Approach::BA);

  const auto pure = blended_shares(epc, gf, ap, BlendWeights{1.0, 0.0, 0.0});
  EXPECT_EQ(pure.shares, epc.shares);
}

TEST(Allocation, BlendWeightsMustFormAConvexCombination) {
  const auto stats = three_countries();
  const auto e = epc_shares(stats);
  EXPECT_EQ(kind_of([&] { blended_shares(e, e, e, BlendWeights{0.5, 0.5, 0.5}); }),
            ErrorKind::Configuration);
  EXPECT_EQ(kind_of([&] { blended_shares(e, e, e, BlendWeights{1.5, -0.5, 0.0}); }),
            ErrorKind::Configuration);
}

TEST(Allocation, ValidateRejectsBadShares) {
  AllocationShares s;
  s.entities = {"A", "B"};
  s.shares = {0.7, 0.2};
  EXPECT_EQ(kind_of([&] { validate(s); }), ErrorKind::Structural);
  s.shares = {1.2, -0.2};
  EXPECT_EQ(kind_of([&] { validate(s); }), ErrorKind::Structural);
}

TEST(Allocation, BudgetIsShareTimesBoundary) {
  const auto stats = three_countries();
  const auto s = epc_shares(stats);
  const Vector pop{10, 30, 60};
  const auto b = allocate_budget(s, budget(6.7), pop);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_DOUBLE_EQ(b[1].budget, 0.3 * 6.7);
  ASSERT_TRUE(b[1].per_capita.has_value());
  EXPECT_DOUBLE_EQ(*b[1].per_capita, 0.3 * 6.7 / 30);
  EXPECT_EQ(b[1].unit, "Gt CO2");
  EXPECT_EQ(kind_of([&] { allocate_budget(s, BudgetSpec{Boundary::Freshwater, 1.0, "furlongs"}); }),
            ErrorKind::Configuration);
}

TEST(Allocation, TwoStageRejectsBadInput) {
  const auto stats = three_countries();
  const auto parents = epc_shares(stats);
  AllocationShares sub;
  sub.entities = {"A/x", "A/y"};
  sub.shares = {0.5, 0.4};
  std::map<std::string, AllocationShares> within{{"A", sub}};
  EXPECT_EQ(kind_of([&] { two_stage_allocate(parents, within, budget(1)); }),
            ErrorKind::Structural);
  sub.shares = {0.5, 0.5};
  within = {{"Q", sub}};
  EXPECT_EQ(kind_of([&] { two_stage_allocate(parents, within, budget(1)); }),
            ErrorKind::Structural);
  within = {{"A", sub}, {"B", sub}};
  EXPECT_EQ(kind_of([&] { two_stage_allocate(parents, within, budget(1)); }),
            ErrorKind::Structural);
}

TEST(Allocation, ApproachNamesRoundTrip) {
  for (auto a : {Approach::EPC, Approach::GF, Approach::AP, Approach::VA, Approach::BA}) {
    EXPECT_EQ(parse_approach(to_string(a)), a);
  }
  EXPECT_EQ(parse_approach("EPC"), Approach::EPC);
  EXPECT_EQ(kind_of([] { parse_approach("fair"); }), ErrorKind::Configuration);
}

// Property: every approach on every fixture yields a valid share vector.
TEST(AllocationProperty, SharesSumToOne) {
  for (const auto& fx : fixtures()) {
    const auto& stats = fx.regions;
    const std::string field = fx.extensions.front().name + "/cba";
    const auto epc = epc_shares(stats);
    const auto gf = gf_shares(stats, field);
    const auto ap = ap_shares(stats);
    const auto va = va_shares(stats);
    for (const auto* s : {&epc, &gf, &ap, &va}) expect_valid(*s);
    expect_valid(blended_shares(epc, gf, ap));
    expect_valid(blended_shares(epc, gf, ap, BlendWeights{0.2, 0.5, 0.3}));
  }
}

// Property: two-stage budgets add back up to their parent and match direct allocation.
TEST(AllocationProperty, TwoStageAdditivity) {
  for (const auto& fx : fixtures()) {
    const auto parents = epc_shares(fx.regions);
    const auto spec = budget(6.70238);
    std::map<std::string, AllocationShares> within;
    std::vector<EntityStats> flat;
    for (const auto& region : fx.regions) {
      std::vector<EntityStats> subs;
      for (std::size_t k = 0; k < fx.table.n_sectors(); ++k) {
        // Sector "population" splits the region's so the direct EPC is comparable.
        const double w = static_cast<double>(k + 1);
        const double denom = static_cast<double>(fx.table.n_sectors() * (fx.table.n_sectors() + 1)) / 2;
        EntityStats s;
        s.entity_id = region.entity_id + "/" + fx.table.sectors[k];
        s.population = region.population * w / denom;
        subs.push_back(s);
        flat.push_back(s);
      }
      within.emplace(region.entity_id, epc_shares(subs));
    }
    const auto two_stage = two_stage_allocate(parents, within, spec);
    const auto countries = allocate_budget(parents, spec);
    for (const auto& c : countries) {
      double sum = 0.0;
      for (const auto& b : two_stage)
        if (b.parent == c.entity_id) sum += b.budget;
      EXPECT_LE(std::abs(sum - c.budget), 1e-12 * std::abs(c.budget));
    }
    const auto direct = allocate_budget(epc_shares(flat), spec);
    ASSERT_EQ(direct.size(), two_stage.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
      EXPECT_EQ(direct[i].entity_id, two_stage[i].entity_id);
      EXPECT_LE(std::abs(direct[i].budget - two_stage[i].budget), 1e-12 * std::abs(direct[i].budget));
    }
  }
}
