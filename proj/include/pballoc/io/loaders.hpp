#pragma once

// Typed loaders on top of the CSV reader. Parse functions take an already
// read document so golden strings can be tested without touching disk; the
// load_* wrappers go through the manifest and verify checksums.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pballoc/allocation.hpp"
#include "pballoc/io/csv.hpp"
#include "pballoc/io/manifest.hpp"
#include "pballoc/local_boundaries.hpp"
#include "pballoc/mrio.hpp"

namespace pballoc::io {

/// Sector label that marks household (final-use) columns in extension files.
inline constexpr const char* kHouseholdSector = "households";

MrioTable parse_mrio(const CsvDocument& z, const CsvDocument& y, const CsvDocument* x = nullptr);

/// `units` is the manifest registry; every extension must appear in it when it is non-null.
std::vector<ExtensionAccount> parse_extensions(const CsvDocument& doc, const MrioTable& table,
                                               const std::map<std::string, std::string>* units);

struct SectorStats {
  std::string region;
  std::string sector;
  double value_added = 0.0;
  double employment = 0.0;
};

/// entity,population,value_added,employment
std::vector<EntityStats> parse_region_stats(const CsvDocument& doc);
/// region,sector,value_added,employment
std::vector<SectorStats> parse_sector_stats(const CsvDocument& doc);

template <typename Record>
struct LocalUnits {
  std::vector<Record> records;
  std::vector<std::string> warnings;
};

/// Long format unit_id,field,value. Watershed fields: MAF, HWC, EWR, consumption:<country>.
LocalUnits<WatershedRecord> parse_watersheds(const CsvDocument& doc);
/// Ecoregion fields: protected_frac, habitat_frac, status, loss:<country>. A declared
/// status that disagrees with the computed one is kept and reported as a warning.
LocalUnits<EcoregionRecord> parse_ecoregions(const CsvDocument& doc);

struct HistoryRecord {
  std::string entity;
  std::string extension;
  std::string perspective;  ///< "pba" or "cba"
  int year = 0;
  double value = 0.0;
};

/// entity,extension,perspective,year,value
std::vector<HistoryRecord> parse_history(const CsvDocument& doc);

struct HouseholdRecord {
  std::string household_id;
  std::string extension;
  double value = 0.0;
};

/// household_id,extension,value
std::vector<HouseholdRecord> parse_households(const CsvDocument& doc);

struct CityRecord {
  std::string city;
  std::string country;
  double population = 0.0;
  std::map<std::string, double> pressures;  ///< remaining columns, e.g. "co2/cba"
};

/// city,country,population,<pressure columns...>
std::vector<CityRecord> parse_cities(const CsvDocument& doc);

/// sector,group: maps detailed sectors to report groups.
std::map<std::string, std::string> parse_concordance(const CsvDocument& doc);

CsvDocument read_document(const DatasetManifest& manifest, const std::string& key);

MrioTable load_mrio(const DatasetManifest& manifest);
std::vector<ExtensionAccount> load_extensions(const DatasetManifest& manifest,
                                              const MrioTable& table);
ExtensionAccount load_extension(const DatasetManifest& manifest, const MrioTable& table,
                                const std::string& name);

struct Dataset {
  DatasetManifest manifest;
  MrioTable table;
  std::vector<ExtensionAccount> extensions;
  std::vector<EntityStats> regions;
  std::vector<SectorStats> sectors;
  LocalUnits<WatershedRecord> watersheds;
  LocalUnits<EcoregionRecord> ecoregions;
  std::vector<HistoryRecord> history;
  std::vector<HouseholdRecord> households;
  std::vector<CityRecord> cities;
  std::map<std::string, std::string> concordance;

  const ExtensionAccount& extension(const std::string& name) const;
};

/// Loads and validates every file the manifest lists.
Dataset load_dataset(const DatasetManifest& manifest);

}  // namespace pballoc::io
