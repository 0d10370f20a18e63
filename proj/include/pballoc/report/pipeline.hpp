#pragma once

// Scenario orchestration: footprints -> budgets -> shares -> report tables.
// compute_scenario is pure; run_scenario adds loading and file output.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pballoc/io/loaders.hpp"
#include "pballoc/local_boundaries.hpp"
#include "pballoc/report/metrics.hpp"
#include "pballoc/report/scenario.hpp"

namespace pballoc::report {

struct GlobalBudget {
  Boundary boundary;
  BudgetSpec spec;          ///< as derived, in its native unit
  double in_report_unit = 0.0;
  std::string report_unit;
};

struct BudgetRow {
  std::string entity;
  std::string parent;  ///< country for sector and city rows
  Boundary boundary = Boundary::ClimateCo2;
  Perspective perspective = Perspective::Cba;
  Approach approach = Approach::EPC;
  double share = 0.0;   ///< share of the global budget
  double budget = 0.0;  ///< report unit
  std::string unit;
  std::optional<double> population;
  std::optional<double> budget_per_capita;
  std::optional<double> actual;  ///< empty when withheld
  std::optional<double> actual_per_capita;
  std::optional<double> over_under;
  std::optional<double> change_pct;
  std::vector<std::pair<int, ReductionRate>> rates;  ///< by target year
};

struct SummaryRow {
  std::string entity;
  Boundary boundary = Boundary::ClimateCo2;
  Perspective perspective = Perspective::Cba;
  std::string unit;  ///< per capita
  double ap = 0.0, epc = 0.0, gf = 0.0;
  double min = 0.0, max = 0.0;
  double mean = 0.0;  ///< the equal-weight blend
  std::optional<double> actual;
  std::optional<double> actual_over_mean;
};

struct TrendRow {
  std::string entity;
  std::string extension;
  std::string perspective;
  int start_year = 0, end_year = 0;
  double start = 0.0, end = 0.0;
  std::optional<double> change_pct;
  std::optional<double> annual_rate;
};

struct InequalityRow {
  std::string extension;
  std::size_t n = 0;
  LorenzResult lorenz;
};

struct ScenarioResult {
  std::string name;
  Scope scope = Scope::Countries;
  int base_year = 0;
  std::vector<int> target_years;
  std::vector<GlobalBudget> global;
  std::vector<BudgetRow> budgets;
  std::vector<SummaryRow> summary;
  std::vector<LocalSosResult> watersheds;
  std::vector<LocalSosResult> ecoregions;
  std::vector<TrendRow> trends;
  std::vector<InequalityRow> inequality;
  std::vector<std::string> warnings;
  std::map<std::string, std::string> checksums;  ///< dataset files
};

ScenarioResult compute_scenario(const ScenarioConfig& config, const io::Dataset& data);

/// File name -> contents for every report. CSVs carry rounded values, report.json full precision.
std::map<std::string, std::string> render_reports(const ScenarioResult& result);

/// Validates, loads, computes and writes. Returns the written paths. On failure
/// every file already written is removed and the error is rethrown with the
/// scenario name attached.
std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& config);

}  // namespace pballoc::report
