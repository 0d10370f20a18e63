#include "pballoc/io/manifest.hpp"

#include <cstdlib>
#include <json.hpp>

#include "pballoc/error.hpp"
#include "pballoc/io/checksum.hpp"
#include "pballoc/units.hpp"

namespace pballoc::io {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path DatasetManifest::path(const std::string& key) const {
  const auto it = files.find(key);
  if (it == files.end()) {
    throw Error(ErrorKind::Configuration, "manifest " + source.string() + " lists no '" + key +
                                              "' file");
  }
  return it->second.is_absolute() ? it->second : root / it->second;
}

std::string DatasetManifest::read_verified(const std::string& key) const {
  const fs::path p = path(key);
  std::string bytes = read_file(p);
  if (const auto it = checksums.find(key); it != checksums.end()) {
    const std::string actual = "sha256:" + sha256_hex(bytes);
    if (actual != it->second) {
      throw Error(ErrorKind::Checksum, p.string() + ": checksum mismatch, manifest has " +
                                           it->second + ", file has " + actual);
    }
  }
  return bytes;
}

DatasetManifest parse_manifest(const std::string& json_text, const fs::path& root,
                               const std::string& label) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(ErrorKind::Parse, label, 0, e.byte, e.what());
  }
  if (!j.is_object()) throw ParseError(ErrorKind::Parse, label, 0, 0, "manifest must be an object");

  DatasetManifest m;
  m.root = root;
  m.source = label;
  try {
    m.base_year = j.value("base_year", 0);
    if (!j.contains("files") || !j["files"].is_object()) {
      throw Error(ErrorKind::Structural, "missing 'files' object");
    }
    for (const auto& [key, value] : j["files"].items()) {
      m.files[key] = fs::path(value.get<std::string>());
    }
    if (j.contains("units")) {
      for (const auto& [key, value] : j["units"].items()) m.units[key] = value.get<std::string>();
    }
    if (j.contains("checksums")) {
      for (const auto& [key, value] : j["checksums"].items()) {
        m.checksums[key] = value.get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(ErrorKind::Parse, label, 0, 0, e.what());
  } catch (const Error& e) {
    throw ParseError(e.kind(), label, 0, 0, e.message());
  }
  for (const char* required : {keys::kZ, keys::kY, keys::kExtensions}) {
    if (!m.has(required)) {
      throw ParseError(ErrorKind::Structural, label, 0, 0,
                       std::string("manifest lists no '") + required + "' file");
    }
  }
  for (const auto& [key, _] : m.checksums) {
    if (!m.has(key)) {
      throw ParseError(ErrorKind::Structural, label, 0, 0,
                       "checksum given for unlisted file '" + key + "'");
    }
  }
  for (const auto& [ext, unit] : m.units) {
    if (!is_known_unit(unit)) {
      throw ParseError(ErrorKind::Configuration, label, 0, 0,
                       "extension '" + ext + "' has unknown unit '" + unit + "'");
    }
  }
  return m;
}

DatasetManifest load_manifest(const fs::path& path) {
  fs::path resolved = path;
  if (path.is_relative() && !fs::exists(path)) {
    if (const char* dir = std::getenv("PB_DATA_DIR"); dir != nullptr && *dir != '\0') {
      resolved = fs::path(dir) / path;
    }
  }
  const std::string text = read_file(resolved);
  return parse_manifest(text, resolved.parent_path(), resolved.string());
}

std::string to_json(const DatasetManifest& m) {
  json j;
  j["base_year"] = m.base_year;
  j["files"] = json::object();
  for (const auto& [k, v] : m.files) j["files"][k] = v.generic_string();
  j["units"] = json::object();
  for (const auto& [k, v] : m.units) j["units"][k] = v;
  j["checksums"] = json::object();
  for (const auto& [k, v] : m.checksums) j["checksums"][k] = v;
  return j.dump(2) + "\n";
}

}  // namespace pballoc::io
