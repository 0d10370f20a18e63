#pragma once

// Dataset manifest: which files make up a dataset, the unit of every
// extension and a checksum per file.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace pballoc::io {

/// Well-known file keys. Only z, y and extensions are required.
namespace keys {
inline constexpr const char* kZ = "z";
inline constexpr const char* kY = "y";
inline constexpr const char* kX = "x";
inline constexpr const char* kExtensions = "extensions";
inline constexpr const char* kRegions = "regions";
inline constexpr const char* kSectors = "sectors";
inline constexpr const char* kWatersheds = "watersheds";
inline constexpr const char* kEcoregions = "ecoregions";
inline constexpr const char* kHistory = "history";
inline constexpr const char* kHouseholds = "households";
inline constexpr const char* kCities = "cities";
inline constexpr const char* kConcordance = "concordance";
}  // namespace keys

struct DatasetManifest {
  std::filesystem::path root;  ///< directory relative paths resolve against
  std::filesystem::path source;
  int base_year = 0;
  std::map<std::string, std::filesystem::path> files;  ///< key -> path as written
  std::map<std::string, std::string> units;            ///< extension -> unit symbol
  std::map<std::string, std::string> checksums;        ///< key -> "sha256:<hex>"

  bool has(const std::string& key) const { return files.count(key) != 0; }
  /// Absolute or root-relative path for a file key; Configuration error if absent.
  std::filesystem::path path(const std::string& key) const;
  /// Reads the file and, when a checksum is recorded, verifies it (Checksum error on mismatch).
  std::string read_verified(const std::string& key) const;
};

/// Parses a manifest. Relative file paths resolve against the manifest's
/// directory, or against $PB_DATA_DIR when the manifest path itself is relative
/// and does not exist from the working directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

DatasetManifest parse_manifest(const std::string& json_text, const std::filesystem::path& root,
                               const std::string& label);

/// Serializes to JSON with sorted keys.
std::string to_json(const DatasetManifest& manifest);

}  // namespace pballoc::io
