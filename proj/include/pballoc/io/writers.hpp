#pragma once

// Serializers matching the loader formats. Numbers are written in shortest
// round-trip form, so parse(serialize(x)) == x bit for bit.

#include <filesystem>
#include <string>
#include <vector>

#include "pballoc/io/loaders.hpp"

namespace pballoc::io {

std::string serialize_z(const MrioTable& t);
/// One final-demand column per region, category "final_demand".
std::string serialize_y(const MrioTable& t);
std::string serialize_x(const MrioTable& t);
std::string serialize_extensions(const std::vector<ExtensionAccount>& exts, const MrioTable& t);
std::string serialize_region_stats(const std::vector<EntityStats>& stats);
std::string serialize_sector_stats(const std::vector<SectorStats>& stats);
std::string serialize_watersheds(const std::vector<WatershedRecord>& recs);
std::string serialize_ecoregions(const std::vector<EcoregionRecord>& recs);

/// Writes bytes to path, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace pballoc::io
