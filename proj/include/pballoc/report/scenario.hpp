#pragma once

// Scenario configuration for a batch run: dataset, boundaries, approaches,
// perspectives, scope and output location.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pballoc/allocation.hpp"
#include "pballoc/budgets.hpp"

namespace pballoc::report {

enum class Perspective { Pba, Cba };
enum class Scope { Countries, Sectors, Cities };
enum class WatershedGfBasis { WithinUnit, Global };

std::string_view to_string(Perspective p) noexcept;
std::string_view to_string(Scope s) noexcept;
Perspective parse_perspective(std::string_view text);
Scope parse_scope(std::string_view text);

struct LocalConfig {
  bool watersheds = true;
  bool ecoregions = true;
  /// Countries evaluated per unit; empty means the report entities.
  std::vector<std::string> countries;
  WatershedGfBasis watershed_gf = WatershedGfBasis::WithinUnit;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::filesystem::path manifest;
  std::filesystem::path output_dir = "out";
  std::vector<Boundary> boundaries;
  std::vector<Approach> approaches;
  BlendWeights ba_weights;
  double ap_alpha = kDefaultApAlpha;
  MissingApData ap_missing_data = MissingApData::Error;
  std::vector<Perspective> perspectives{Perspective::Cba, Perspective::Pba};
  Scope scope = Scope::Countries;
  /// Countries whose rows are reported; empty means every region of the table.
  std::vector<std::string> report_entities;
  std::vector<int> target_years{2050, 2100};
  /// Which extension measures each boundary.
  std::map<Boundary, std::string> extensions{{Boundary::ClimateCo2, "co2"},
                                             {Boundary::ClimateGhg, "ghg"},
                                             {Boundary::Freshwater, "water"},
                                             {Boundary::Biodiversity, "biodiversity"}};
  /// Units reported values are expressed in (totals; per-capita adds "/capita").
  std::map<Boundary, std::string> report_units{{Boundary::ClimateCo2, "t CO2"},
                                               {Boundary::ClimateGhg, "t CO2eq"},
                                               {Boundary::Freshwater, "m3"},
                                               {Boundary::Biodiversity, "pico PDF*yr"}};
  /// Boundaries reported as budget-only rows (no actual, no ratio).
  std::set<Boundary> withhold_actual;

  ClimateBudgetSpec climate;
  double ghg_factor = kDefaultGhgFactor;
  double freshwater_km3 = kFreshwaterBoundaryKm3;
  double biodiversity_epc_pico = kBiodiversityEpcPicoPdfYr;

  LocalConfig local;
};

/// Parses scenario JSON. A relative manifest path resolves against `base_dir`.
ScenarioConfig parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir,
                              const std::string& label);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Configuration error unless at least one boundary, perspective and approach is
/// selected, BA weights are non-negative and sum to 1, and target years are valid.
void validate(const ScenarioConfig& config);

/// Expands CLI boundary groups: "climate" -> co2 and ghg, "water" -> freshwater.
std::vector<Boundary> parse_boundary_list(const std::string& comma_separated);
std::vector<Approach> parse_approach_list(const std::string& comma_separated);
/// "pba", "cba" or "both".
std::vector<Perspective> parse_perspective_option(const std::string& text);

/// Decimal places used for per-capita values of a boundary in rounded reports.
int per_capita_decimals(Boundary b) noexcept;

}  // namespace pballoc::report
