#include "pballoc/report/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "pballoc/error.hpp"
#include "pballoc/io/checksum.hpp"
#include "pballoc/units.hpp"

namespace pballoc::report {

using nlohmann::json;

std::string_view to_string(Perspective p) noexcept { return p == Perspective::Pba ? "pba" : "cba"; }

std::string_view to_string(Scope s) noexcept {
  switch (s) {
    case Scope::Countries: return "countries";
    case Scope::Sectors: return "sectors";
    case Scope::Cities: return "cities";
  }
  return "?";
}

Perspective parse_perspective(std::string_view text) {
  if (text == "pba" || text == "PBA") return Perspective::Pba;
  if (text == "cba" || text == "CBA") return Perspective::Cba;
  throw Error(ErrorKind::Configuration, "unknown perspective '" + std::string(text) + "'");
}

Scope parse_scope(std::string_view text) {
  if (text == "countries") return Scope::Countries;
  if (text == "sectors") return Scope::Sectors;
  if (text == "cities") return Scope::Cities;
  throw Error(ErrorKind::Configuration, "unknown scope '" + std::string(text) + "'");
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
void push_unique(std::vector<T>& v, T x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

std::vector<Boundary> parse_boundary_list(const std::string& text) {
  std::vector<Boundary> out;
  for (const auto& item : split_list(text)) {
    if (item == "climate") {
      push_unique(out, Boundary::ClimateCo2);
      push_unique(out, Boundary::ClimateGhg);
    } else {
      push_unique(out, parse_boundary(item));
    }
  }
  return out;
}

std::vector<Approach> parse_approach_list(const std::string& text) {
  std::vector<Approach> out;
  for (const auto& item : split_list(text)) push_unique(out, parse_approach(item));
  return out;
}

std::vector<Perspective> parse_perspective_option(const std::string& text) {
  if (text == "both") return {Perspective::Cba, Perspective::Pba};
  std::vector<Perspective> out;
  for (const auto& item : split_list(text)) push_unique(out, parse_perspective(item));
  return out;
}

int per_capita_decimals(Boundary b) noexcept { return b == Boundary::Freshwater ? 0 : 1; }

ScenarioConfig parse_scenario(const std::string& text, const std::filesystem::path& base_dir,
                              const std::string& label) {
  ScenarioConfig c;
  try {
    const json j = json::parse(text);
    c.name = j.value("name", c.name);
    if (!j.contains("manifest")) throw Error(ErrorKind::Configuration, "scenario names no manifest");
    c.manifest = j.at("manifest").get<std::string>();
    if (c.manifest.is_relative() && std::filesystem::exists(base_dir / c.manifest)) {
      c.manifest = base_dir / c.manifest;
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("boundaries")) {
      for (const auto& b : j.at("boundaries")) {
        for (auto x : parse_boundary_list(b.get<std::string>())) push_unique(c.boundaries, x);
      }
    }
    if (j.contains("approaches")) {
      for (const auto& a : j.at("approaches")) push_unique(c.approaches, parse_approach(a.get<std::string>()));
    }
    if (j.contains("ba_weights")) {
      const auto& w = j.at("ba_weights");
      for (const auto& [k, _] : w.items()) {
        if (k != "epc" && k != "gf" && k != "ap") {
          throw Error(ErrorKind::Configuration, "BA weights cover epc, gf and ap only, got '" + k + "'");
        }
      }
      c.ba_weights = BlendWeights{w.value("epc", 0.0), w.value("gf", 0.0), w.value("ap", 0.0)};
    }
    c.ap_alpha = j.value("ap_alpha", c.ap_alpha);
    if (j.contains("ap_missing_data")) {
      const auto p = j.at("ap_missing_data").get<std::string>();
      if (p == "error") c.ap_missing_data = MissingApData::Error;
      else if (p == "redistribute") c.ap_missing_data = MissingApData::Redistribute;
      else throw Error(ErrorKind::Configuration, "ap_missing_data must be error or redistribute");
    }
    if (j.contains("perspectives")) {
      c.perspectives.clear();
      for (const auto& p : j.at("perspectives")) {
        for (auto x : parse_perspective_option(p.get<std::string>())) push_unique(c.perspectives, x);
      }
    }
    if (j.contains("scope")) c.scope = parse_scope(j.at("scope").get<std::string>());
    if (j.contains("report_entities")) c.report_entities = j.at("report_entities").get<std::vector<std::string>>();
    if (j.contains("target_years")) c.target_years = j.at("target_years").get<std::vector<int>>();
    if (j.contains("extensions")) {
      for (const auto& [k, v] : j.at("extensions").items()) c.extensions[parse_boundary(k)] = v.get<std::string>();
    }
    if (j.contains("report_units")) {
      for (const auto& [k, v] : j.at("report_units").items()) c.report_units[parse_boundary(k)] = v.get<std::string>();
    }
    if (j.contains("withhold_actual")) {
      for (const auto& b : j.at("withhold_actual")) {
        for (auto x : parse_boundary_list(b.get<std::string>())) c.withhold_actual.insert(x);
      }
    }
    if (j.contains("climate")) {
      const auto& cl = j.at("climate");
      const auto target = parse_warming_target(cl.value("target", std::string("1.5C")));
      const auto prob = parse_likelihood(cl.value("probability", std::string("50%")));
      c.climate = ClimateBudgetSpec::scenario(target, prob, cl.value("analysis_year", 2016));
      c.climate.budget_from_2020 = cl.value("budget_from_2020_gt", c.climate.budget_from_2020);
      c.climate.horizon_end = cl.value("horizon_end", c.climate.horizon_end);
      if (cl.contains("backcast_gt")) c.climate.backcast_emissions = cl.at("backcast_gt").get<double>();
      c.ghg_factor = cl.value("ghg_factor", c.ghg_factor);
    }
    if (j.contains("freshwater")) c.freshwater_km3 = j.at("freshwater").value("global_km3", c.freshwater_km3);
    if (j.contains("biodiversity")) {
      c.biodiversity_epc_pico = j.at("biodiversity").value("epc_pico_pdf_yr", c.biodiversity_epc_pico);
    }
    if (j.contains("local")) {
      const auto& l = j.at("local");
      c.local.watersheds = l.value("watersheds", c.local.watersheds);
      c.local.ecoregions = l.value("ecoregions", c.local.ecoregions);
      if (l.contains("countries")) c.local.countries = l.at("countries").get<std::vector<std::string>>();
      const auto basis = l.value("watershed_gf", std::string("within_unit"));
      if (basis == "within_unit") c.local.watershed_gf = WatershedGfBasis::WithinUnit;
      else if (basis == "global") c.local.watershed_gf = WatershedGfBasis::Global;
      else throw Error(ErrorKind::Configuration, "watershed_gf must be within_unit or global");
    }
  } catch (const json::exception& e) {
    throw ParseError(ErrorKind::Parse, label, 0, 0, e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.kind(), label, 0, 0, e.message());
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return parse_scenario(io::read_file(path), path.parent_path(), path.string());
}

void validate(const ScenarioConfig& c) {
  if (c.boundaries.empty()) throw Error(ErrorKind::Configuration, "scenario selects no boundary");
  if (c.approaches.empty()) throw Error(ErrorKind::Configuration, "scenario selects no allocation approach");
  if (c.perspectives.empty()) throw Error(ErrorKind::Configuration, "scenario selects no perspective");
  const double w[] = {c.ba_weights.epc, c.ba_weights.gf, c.ba_weights.ap};
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw Error(ErrorKind::Configuration, "BA weights must be non-negative");
  }
  if (std::fabs(w[0] + w[1] + w[2] - 1.0) > kShareSumTolerance) {
    throw Error(ErrorKind::Configuration, "BA weights must sum to 1");
  }
  if (!std::isfinite(c.ap_alpha)) throw Error(ErrorKind::Configuration, "ap_alpha must be finite");
  for (int y : c.target_years) {
    if (y <= c.climate.analysis_year) {
      throw Error(ErrorKind::Configuration, "target year " + std::to_string(y) + " is not after the analysis year");
    }
  }
  for (auto b : c.boundaries) {
    if (!c.extensions.count(b)) {
      throw Error(ErrorKind::Configuration, "no extension configured for " + std::string(to_string(b)));
    }
    const auto it = c.report_units.find(b);
    if (it == c.report_units.end()) {
      throw Error(ErrorKind::Configuration, "no report unit configured for " + std::string(to_string(b)));
    }
    parse_unit(it->second);
  }
  if (!(c.freshwater_km3 > 0.0) || !(c.biodiversity_epc_pico > 0.0) || !(c.ghg_factor > 0.0)) {
    throw Error(ErrorKind::Configuration, "boundary parameters must be positive");
  }
}

}  // namespace pballoc::report
