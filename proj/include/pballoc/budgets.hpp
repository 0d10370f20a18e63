#pragma once

// Global planetary-boundary budgets resolved to one number for the analysis year.

#include <optional>
#include <string>
#include <string_view>

namespace pballoc {

enum class Boundary { ClimateCo2, ClimateGhg, Freshwater, Biodiversity };
enum class BudgetBasis { YearlyFlow, CumulativeStock };

std::string_view to_string(Boundary b) noexcept;
Boundary parse_boundary(std::string_view text);

/// A resolved global boundary.
struct BudgetSpec {
  Boundary boundary;
  double global_annual = 0.0;  ///< in `unit` per year (or in total for a cumulative basis)
  std::string unit;
  BudgetBasis basis = BudgetBasis::YearlyFlow;
};

/// Throws Configuration when the unit is unknown or the value is not a positive finite number.
void validate(const BudgetSpec& spec);

enum class WarmingTarget { OnePointFive, Two };
enum class Likelihood { Fifty, SixtySix };

WarmingTarget parse_warming_target(std::string_view text);  // "1.5C", "2.0C", "2C"
Likelihood parse_likelihood(std::string_view text);         // "50%", "66%", "50", "66"

/// Remaining CO2 budget from the start of 2020, Gt CO2.
double remaining_budget_from_2020(WarmingTarget target, Likelihood likelihood) noexcept;

struct ClimateBudgetSpec {
  WarmingTarget target = WarmingTarget::OnePointFive;
  Likelihood probability = Likelihood::Fifty;
  double budget_from_2020 = 395.0;  ///< Gt CO2
  int analysis_year = 2016;
  int horizon_end = 2100;
  /// Emissions between analysis_year and 2020 added back to the budget, Gt CO2.
  /// Defaults to 168 only for 2016; any other year must set it explicitly.
  std::optional<double> backcast_emissions;

  static ClimateBudgetSpec scenario(WarmingTarget target, Likelihood probability,
                                    int analysis_year = 2016);
};

inline constexpr double kBackcast2016To2020 = 168.0;
inline constexpr double kDefaultGhgFactor = 1.25;
inline constexpr double kFreshwaterBoundaryKm3 = 4000.0;
inline constexpr double kBiodiversityEpcPicoPdfYr = 2.0;

/// (budget_from_2020 + backcast) / (horizon_end - analysis_year), in Gt CO2/yr.
BudgetSpec climate_yearly_budget(const ClimateBudgetSpec& spec);

/// Scales a CO2 budget to all GHGs; unit moves from CO2 to CO2eq.
BudgetSpec ghg_from_co2(const BudgetSpec& co2_budget, double factor = kDefaultGhgFactor);

/// Consumptive blue water, km3/yr.
BudgetSpec freshwater_budget(double global_km3 = kFreshwaterBoundaryKm3);

/// per_capita_epc (pico PDF*yr per person) times global population, in PDF*yr/yr.
BudgetSpec biodiversity_budget(double global_population,
                               double per_capita_epc = kBiodiversityEpcPicoPdfYr);

}  // namespace pballoc
