#pragma once

// Seeded synthetic MRIO datasets at desk scale.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pballoc/io/loaders.hpp"

namespace pballoc::io {

struct PressureProfile {
  std::string name = "co2";
  std::string unit = "kt CO2";
  double intensity_min = 0.05;  ///< pressure per unit output
  double intensity_max = 1.0;
  double household_share = 0.2;  ///< direct household pressure relative to regional industry total
};

struct FixtureSpec {
  std::size_t n_regions = 3;
  std::size_t n_sectors = 2;
  double trade_intensity = 0.3;  ///< share of each column's inputs bought from other regions
  std::uint64_t seed = 1;
  std::vector<PressureProfile> pressures{PressureProfile{}};
  std::size_t n_watersheds = 0;
  std::size_t n_ecoregions = 0;
  int base_year = 2016;
};

/// Configuration error for empty dimensions, trade_intensity outside [0, 1],
/// inverted intensity ranges or unknown units.
void validate(const FixtureSpec& spec);

FixtureSpec parse_fixture_spec(const std::string& json_text, const std::string& label);

struct Fixture {
  MrioTable table;
  std::vector<ExtensionAccount> extensions;
  /// Population, value added, employment, and "<pressure>/pba" and "<pressure>/cba".
  std::vector<EntityStats> regions;
  std::vector<SectorStats> sectors;
  std::vector<WatershedRecord> watersheds;
  std::vector<EcoregionRecord> ecoregions;
};

/// Deterministic for a fixed spec. Column sums of A lie in [0.1, 0.7], so the
/// economy is always productive; trade_intensity = 0 gives block-diagonal Z and Y.
Fixture generate_fixture(const FixtureSpec& spec);

/// Writes every file plus manifest.json (with checksums) into `dir`; returns the manifest path.
std::filesystem::path write_fixture(const Fixture& fixture, const std::filesystem::path& dir,
                                    int base_year);

}  // namespace pballoc::io
