#include "pballoc/budgets.hpp"

#include <cmath>

#include "pballoc/error.hpp"
#include "pballoc/units.hpp"

namespace pballoc {

std::string_view to_string(Boundary b) noexcept {
  switch (b) {
    case Boundary::ClimateCo2: return "climate_co2";
    case Boundary::ClimateGhg: return "climate_ghg";
    case Boundary::Freshwater: return "freshwater";
    case Boundary::Biodiversity: return "biodiversity";
  }
  return "?";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "climate_co2" || text == "co2") return Boundary::ClimateCo2;
  if (text == "climate_ghg" || text == "ghg") return Boundary::ClimateGhg;
  if (text == "freshwater" || text == "water") return Boundary::Freshwater;
  if (text == "biodiversity") return Boundary::Biodiversity;
  throw Error(ErrorKind::Configuration, "unknown boundary '" + std::string(text) + "'");
}

void validate(const BudgetSpec& spec) {
  if (!is_known_unit(spec.unit)) {
    throw Error(ErrorKind::Configuration, std::string(to_string(spec.boundary)) +
                                              " budget has unresolved unit '" + spec.unit + "'");
  }
  if (!std::isfinite(spec.global_annual) || !(spec.global_annual > 0.0)) {
    throw Error(ErrorKind::Configuration,
                std::string(to_string(spec.boundary)) + " budget must be a positive number");
  }
}

WarmingTarget parse_warming_target(std::string_view text) {
  if (text == "1.5C" || text == "1.5") return WarmingTarget::OnePointFive;
  if (text == "2.0C" || text == "2C" || text == "2.0" || text == "2") return WarmingTarget::Two;
  throw Error(ErrorKind::Configuration, "unknown warming target '" + std::string(text) + "'");
}

Likelihood parse_likelihood(std::string_view text) {
  if (text == "50%" || text == "50") return Likelihood::Fifty;
  if (text == "66%" || text == "66") return Likelihood::SixtySix;
  throw Error(ErrorKind::Configuration, "unknown probability '" + std::string(text) + "'");
}

double remaining_budget_from_2020(WarmingTarget target, Likelihood likelihood) noexcept {
  if (target == WarmingTarget::OnePointFive) {
    return likelihood == Likelihood::SixtySix ? 235.0 : 395.0;
  }
  return likelihood == Likelihood::SixtySix ? 985.0 : 1315.0;
}

ClimateBudgetSpec ClimateBudgetSpec::scenario(WarmingTarget target, Likelihood probability,
                                              int analysis_year) {
  ClimateBudgetSpec spec;
  spec.target = target;
  spec.probability = probability;
  spec.budget_from_2020 = remaining_budget_from_2020(target, probability);
  spec.analysis_year = analysis_year;
  return spec;
}

BudgetSpec climate_yearly_budget(const ClimateBudgetSpec& spec) {
  if (spec.analysis_year > 2020) {
    throw Error(ErrorKind::Configuration, "analysis year " + std::to_string(spec.analysis_year) +
                                              " is after the 2020 budget reference");
  }
  if (spec.horizon_end <= spec.analysis_year) {
    throw Error(ErrorKind::Configuration, "budget horizon must end after the analysis year");
  }
  double backcast = 0.0;
  if (spec.backcast_emissions) {
    backcast = *spec.backcast_emissions;
  } else if (spec.analysis_year == 2016) {
    backcast = kBackcast2016To2020;
  } else if (spec.analysis_year != 2020) {
    throw Error(ErrorKind::Configuration,
                "no backcast emissions configured for analysis year " +
                    std::to_string(spec.analysis_year));
  }
  const double years = static_cast<double>(spec.horizon_end - spec.analysis_year);
  return BudgetSpec{Boundary::ClimateCo2, (spec.budget_from_2020 + backcast) / years, "Gt CO2",
                    BudgetBasis::YearlyFlow};
}

BudgetSpec ghg_from_co2(const BudgetSpec& co2_budget, double factor) {
  if (co2_budget.boundary != Boundary::ClimateCo2) {
    throw Error(ErrorKind::Configuration, "GHG budget must be derived from a CO2 budget");
  }
  const Unit co2 = parse_unit(co2_budget.unit);
  const double gt = convert(co2_budget.global_annual, co2, parse_unit("Gt CO2"));
  return BudgetSpec{Boundary::ClimateGhg, gt * factor, "Gt CO2eq", co2_budget.basis};
}

BudgetSpec freshwater_budget(double global_km3) {
  return BudgetSpec{Boundary::Freshwater, global_km3, "km3", BudgetBasis::YearlyFlow};
}

BudgetSpec biodiversity_budget(double global_population, double per_capita_epc) {
  return BudgetSpec{Boundary::Biodiversity, per_capita_epc * 1e-12 * global_population, "PDF*yr",
                    BudgetBasis::YearlyFlow};
}

}  // namespace pballoc
