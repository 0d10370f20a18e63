#include "pballoc/io/loaders.hpp"

#include <algorithm>
#include <set>

#include "pballoc/error.hpp"

namespace pballoc::io {

namespace {

struct Header {
  std::vector<std::string> top;     // region per data column
  std::vector<std::string> bottom;  // sector/category per data column
  std::size_t line = 0;
};

constexpr std::size_t kLabelCols = 2;

Header two_row_header(const CsvDocument& doc) {
  if (doc.rows.size() < 2) {
    throw ParseError(ErrorKind::Structural, doc.file, doc.rows.empty() ? 0 : doc.rows[0].line, 0,
                     "matrix file needs a two-row header");
  }
  const auto& r0 = doc.rows[0];
  const auto& r1 = doc.rows[1];
  if (r0.cells.size() != r1.cells.size() || r0.cells.size() < kLabelCols) {
    throw ParseError(ErrorKind::Structural, doc.file, r1.line, 0,
                     "header rows differ in width");
  }
  Header h;
  h.top.assign(r0.cells.begin() + kLabelCols, r0.cells.end());
  h.bottom.assign(r1.cells.begin() + kLabelCols, r1.cells.end());
  h.line = r0.line;
  return h;
}

std::vector<std::string> unique_in_order(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

// Checks that data rows carry labels (region, sector) matching table order.
void check_row_labels(const CsvDocument& doc, const MrioTable& t, std::size_t first_row) {
  const std::size_t n_rows = doc.rows.size() - first_row;
  if (n_rows != t.size()) {
    throw ParseError(ErrorKind::Structural, doc.file,
                     doc.rows.empty() ? 0 : doc.rows.back().line, 0,
                     "expected " + std::to_string(t.size()) + " data rows, found " +
                         std::to_string(n_rows));
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& row = doc.rows[first_row + i];
    if (row.cells.size() < kLabelCols) {
      throw ParseError(ErrorKind::Structural, doc.file, row.line, 1, "missing row labels");
    }
    const auto& region = t.regions[t.region_of(i)];
    const auto& sector = t.sectors[i % t.n_sectors()];
    if (row.cells[0] != region || row.cells[1] != sector) {
      throw ParseError(ErrorKind::Structural, doc.file, row.line, row.cells[0] != region ? 1 : 2,
                       "row label " + row.cells[0] + "/" + row.cells[1] + " does not match " +
                           region + "/" + sector);
    }
  }
}

struct LongRow {
  const CsvRow* row;
  std::string unit;
  std::string field;
  std::string value;
};

// Groups long-format rows by unit id, keeping first-appearance order.
std::vector<std::pair<std::string, std::vector<LongRow>>> group_long(const CsvDocument& doc) {
  const auto cols = doc.columns({"unit_id", "field", "value"});
  std::vector<std::pair<std::string, std::vector<LongRow>>> groups;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, doc.rows[0].cells.size());
    LongRow lr{&row, row.cells[cols[0]], row.cells[cols[1]], row.cells[cols[2]]};
    if (lr.unit.empty()) throw ParseError(ErrorKind::Structural, doc.file, row.line, cols[0] + 1, "empty unit_id");
    auto [it, inserted] = index.emplace(lr.unit, groups.size());
    if (inserted) groups.push_back({lr.unit, {}});
    groups[it->second].second.push_back(std::move(lr));
  }
  return groups;
}

bool starts_with(const std::string& s, const char* prefix, std::string& rest) {
  const std::string p(prefix);
  if (s.rfind(p, 0) != 0) return false;
  rest = s.substr(p.size());
  return true;
}

template <typename Fn>
auto with_context(const CsvDocument& doc, const CsvRow& row, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.kind(), doc.file, row.line, 0, e.message());
  }
}

}  // namespace

MrioTable parse_mrio(const CsvDocument& z, const CsvDocument& y, const CsvDocument* x) {
  const Header zh = two_row_header(z);
  MrioTable t;
  t.regions = unique_in_order(zh.top);
  if (zh.top.empty()) {
    throw ParseError(ErrorKind::Structural, z.file, zh.line, 0, "empty region/sector list");
  }
  for (std::size_t c = 0; c < zh.top.size() && zh.top[c] == zh.top.front(); ++c) {
    t.sectors.push_back(zh.bottom[c]);
  }
  if (t.sectors.empty() || t.size() != zh.top.size()) {
    throw ParseError(ErrorKind::Structural, z.file, zh.line, 0,
                     "columns are not a full region x sector grid");
  }
  for (std::size_t c = 0; c < zh.top.size(); ++c) {
    if (zh.top[c] != t.regions[t.region_of(c)] || zh.bottom[c] != t.sectors[c % t.n_sectors()]) {
      throw ParseError(ErrorKind::Structural, z.file, zh.line + (zh.top[c] == t.regions[t.region_of(c)]),
                       c + kLabelCols + 1, "column label " + zh.top[c] + "/" + zh.bottom[c] +
                                               " breaks the region-major grid");
    }
  }
  if (std::set<std::string>(t.sectors.begin(), t.sectors.end()).size() != t.sectors.size()) {
    throw ParseError(ErrorKind::Structural, z.file, zh.line + 1, 0, "duplicate sector label");
  }

  const std::size_t nm = t.size();
  check_row_labels(z, t, 2);
  t.z = Matrix(nm, nm);
  for (std::size_t i = 0; i < nm; ++i) {
    const auto& row = z.rows[2 + i];
    z.require_width(row, nm + kLabelCols);
    for (std::size_t j = 0; j < nm; ++j) t.z(i, j) = z.number(row, j + kLabelCols);
  }

  const Header yh = two_row_header(y);
  std::vector<std::size_t> y_region(yh.top.size());
  for (std::size_t c = 0; c < yh.top.size(); ++c) {
    const auto it = std::find(t.regions.begin(), t.regions.end(), yh.top[c]);
    if (it == t.regions.end()) {
      throw ParseError(ErrorKind::Structural, y.file, yh.line, c + kLabelCols + 1,
                       "final demand column for unknown region '" + yh.top[c] + "'");
    }
    y_region[c] = static_cast<std::size_t>(it - t.regions.begin());
  }
  check_row_labels(y, t, 2);
  t.y = Matrix(nm, t.n_regions());
  for (std::size_t i = 0; i < nm; ++i) {
    const auto& row = y.rows[2 + i];
    y.require_width(row, yh.top.size() + kLabelCols);
    for (std::size_t c = 0; c < yh.top.size(); ++c) {
      t.y(i, y_region[c]) += y.number(row, c + kLabelCols);
    }
  }

  if (x != nullptr) {
    check_row_labels(*x, t, 1);
    t.x.resize(nm);
    for (std::size_t i = 0; i < nm; ++i) {
      const auto& row = x->rows[1 + i];
      x->require_width(row, kLabelCols + 1);
      t.x[i] = x->number(row, kLabelCols);
    }
  } else {
    const Vector zr = t.z.row_sums();
    const Vector yr = t.y.row_sums();
    t.x.resize(nm);
    for (std::size_t i = 0; i < nm; ++i) t.x[i] = zr[i] + yr[i];
  }
  try {
    validate(t);
  } catch (const Error& e) {
    throw ParseError(e.kind(), z.file, 0, 0, e.message());
  }
  return t;
}

std::vector<ExtensionAccount> parse_extensions(const CsvDocument& doc, const MrioTable& t,
                                               const std::map<std::string, std::string>* units) {
  const Header h = two_row_header(doc);
  const std::size_t nm = t.size();
  // Column -> industry index, or nm + region for household columns.
  std::vector<std::size_t> target(h.top.size());
  std::vector<bool> seen(nm + t.n_regions(), false);
  for (std::size_t c = 0; c < h.top.size(); ++c) {
    const auto r = std::find(t.regions.begin(), t.regions.end(), h.top[c]);
    if (r == t.regions.end()) {
      throw ParseError(ErrorKind::Structural, doc.file, h.line, c + kLabelCols + 1,
                       "unknown region '" + h.top[c] + "'");
    }
    const std::size_t ri = static_cast<std::size_t>(r - t.regions.begin());
    std::size_t idx;
    if (h.bottom[c] == kHouseholdSector) {
      idx = nm + ri;
    } else {
      const auto s = std::find(t.sectors.begin(), t.sectors.end(), h.bottom[c]);
      if (s == t.sectors.end()) {
        throw ParseError(ErrorKind::Structural, doc.file, h.line + 1, c + kLabelCols + 1,
                         "unknown sector '" + h.bottom[c] + "'");
      }
      idx = t.index(ri, static_cast<std::size_t>(s - t.sectors.begin()));
    }
    if (seen[idx]) {
      throw ParseError(ErrorKind::Structural, doc.file, h.line, c + kLabelCols + 1,
                       "duplicate column " + h.top[c] + "/" + h.bottom[c]);
    }
    seen[idx] = true;
    target[c] = idx;
  }
  const auto industry_cols = static_cast<std::size_t>(std::count(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(nm), true));
  if (industry_cols != nm) {
    throw ParseError(ErrorKind::Structural, doc.file, h.line, 0,
                     "extension covers " + std::to_string(industry_cols) + " industries, table has " +
                         std::to_string(nm));
  }

  std::vector<ExtensionAccount> out;
  std::set<std::string> names;
  for (std::size_t r = 2; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, h.top.size() + kLabelCols);
    ExtensionAccount ext;
    ext.name = row.cells[0];
    ext.unit = row.cells[1];
    if (ext.name.empty() || !names.insert(ext.name).second) {
      throw ParseError(ErrorKind::Structural, doc.file, row.line, 1,
                       "empty or duplicate extension name '" + ext.name + "'");
    }
    with_context(doc, row, [&] {
      const Unit unit = parse_unit(ext.unit);
      if (units != nullptr) {
        const auto it = units->find(ext.name);
        if (it == units->end()) {
          throw Error(ErrorKind::Configuration,
                      "units registry does not cover extension '" + ext.name + "'");
        }
        if (!(parse_unit(it->second) == unit)) {
          throw Error(ErrorKind::Configuration, "extension '" + ext.name + "' is in " + ext.unit +
                                                    " but the manifest declares " + it->second);
        }
      }
      ext.unit = unit.symbol;
    });
    ext.f.assign(nm, 0.0);
    ext.f_hh.assign(t.n_regions(), 0.0);
    for (std::size_t c = 0; c < h.top.size(); ++c) {
      const double v = doc.number(row, c + kLabelCols);
      if (target[c] < nm) ext.f[target[c]] = v;
      else ext.f_hh[target[c] - nm] = v;
    }
    with_context(doc, row, [&] { validate(ext, t); });
    out.push_back(std::move(ext));
  }
  return out;
}

std::vector<EntityStats> parse_region_stats(const CsvDocument& doc) {
  const auto cols = doc.columns({"entity", "population", "value_added", "employment"});
  std::vector<EntityStats> out;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, doc.rows[0].cells.size());
    EntityStats s;
    s.entity_id = row.cells[cols[0]];
    s.population = doc.number(row, cols[1]);
    s.value_added = doc.number(row, cols[2]);
    s.employment = doc.number(row, cols[3]);
    if (s.population < 0 || s.value_added < 0 || s.employment < 0) {
      throw ParseError(ErrorKind::InvalidInput, doc.file, row.line, 0,
                       "negative statistic for " + s.entity_id);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SectorStats> parse_sector_stats(const CsvDocument& doc) {
  const auto cols = doc.columns({"region", "sector", "value_added", "employment"});
  std::vector<SectorStats> out;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, doc.rows[0].cells.size());
    SectorStats s{row.cells[cols[0]], row.cells[cols[1]], doc.number(row, cols[2]),
                  doc.number(row, cols[3])};
    if (s.value_added < 0 || s.employment < 0) {
      throw ParseError(ErrorKind::InvalidInput, doc.file, row.line, 0,
                       "negative statistic for " + s.region + "/" + s.sector);
    }
    out.push_back(std::move(s));
  }
  return out;
}

LocalUnits<WatershedRecord> parse_watersheds(const CsvDocument& doc) {
  LocalUnits<WatershedRecord> out;
  for (const auto& [id, rows] : group_long(doc)) {
    WatershedRecord rec;
    rec.watershed_id = id;
    bool has_maf = false, has_hwc = false, has_ewr = false;
    for (const auto& lr : rows) {
      const double v = parse_double(lr.value, doc.file, lr.row->line, 3);
      std::string country;
      if (lr.field == "MAF") { rec.maf = v; has_maf = true; }
      else if (lr.field == "HWC") { rec.hwc = v; has_hwc = true; }
      else if (lr.field == "EWR") { rec.ewr = v; has_ewr = true; }
      else if (starts_with(lr.field, "consumption:", country) && !country.empty()) {
        rec.country_consumption[country] += v;
      } else {
        throw ParseError(ErrorKind::Structural, doc.file, lr.row->line, 2,
                         "unknown watershed field '" + lr.field + "'");
      }
    }
    if (!(has_maf && has_hwc && has_ewr)) {
      throw ParseError(ErrorKind::InvalidInput, doc.file, rows.front().row->line, 0,
                       "watershed " + id + " lacks one of MAF, HWC, EWR");
    }
    with_context(doc, *rows.front().row, [&] { validate(rec); });
    out.records.push_back(std::move(rec));
  }
  return out;
}

LocalUnits<EcoregionRecord> parse_ecoregions(const CsvDocument& doc) {
  LocalUnits<EcoregionRecord> out;
  for (const auto& [id, rows] : group_long(doc)) {
    EcoregionRecord rec;
    rec.ecoregion_id = id;
    bool has_p = false, has_h = false;
    std::size_t status_line = 0;
    for (const auto& lr : rows) {
      std::string country;
      if (lr.field == "status") {
        rec.declared_status = with_context(doc, *lr.row, [&] { return parse_ecoregion_status(lr.value); });
        status_line = lr.row->line;
        continue;
      }
      const double v = parse_double(lr.value, doc.file, lr.row->line, 3);
      if (lr.field == "protected_frac") { rec.protected_frac = v; has_p = true; }
      else if (lr.field == "habitat_frac") { rec.habitat_frac = v; has_h = true; }
      else if (starts_with(lr.field, "loss:", country) && !country.empty()) {
        rec.country_loss[country] += v;
      } else {
        throw ParseError(ErrorKind::Structural, doc.file, lr.row->line, 2,
                         "unknown ecoregion field '" + lr.field + "'");
      }
    }
    if (!(has_p && has_h)) {
      throw ParseError(ErrorKind::InvalidInput, doc.file, rows.front().row->line, 0,
                       "ecoregion " + id + " lacks protected_frac or habitat_frac");
    }
    with_context(doc, *rows.front().row, [&] { validate(rec); });
    if (rec.declared_status && *rec.declared_status != rec.status()) {
      out.warnings.push_back(doc.file + ":" + std::to_string(status_line) + ": ecoregion " + id +
                             " declares status " + std::string(to_string(*rec.declared_status)) +
                             " but its fractions give " + std::string(to_string(rec.status())));
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

std::vector<HistoryRecord> parse_history(const CsvDocument& doc) {
  const auto cols = doc.columns({"entity", "extension", "perspective", "year", "value"});
  std::vector<HistoryRecord> out;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, doc.rows[0].cells.size());
    HistoryRecord h;
    h.entity = row.cells[cols[0]];
    h.extension = row.cells[cols[1]];
    h.perspective = row.cells[cols[2]];
    if (h.perspective != "pba" && h.perspective != "cba") {
      throw ParseError(ErrorKind::InvalidInput, doc.file, row.line, cols[2] + 1,
                       "perspective must be pba or cba");
    }
    const double year = doc.number(row, cols[3]);
    if (year != static_cast<int>(year)) {
      throw ParseError(ErrorKind::Parse, doc.file, row.line, cols[3] + 1, "year must be an integer");
    }
    h.year = static_cast<int>(year);
    h.value = doc.number(row, cols[4]);
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<HouseholdRecord> parse_households(const CsvDocument& doc) {
  const auto cols = doc.columns({"household_id", "extension", "value"});
  std::vector<HouseholdRecord> out;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, doc.rows[0].cells.size());
    HouseholdRecord h{row.cells[cols[0]], row.cells[cols[1]], doc.number(row, cols[2])};
    if (h.value < 0) {
      throw ParseError(ErrorKind::InvalidPressure, doc.file, row.line, cols[2] + 1,
                       "negative household footprint");
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<CityRecord> parse_cities(const CsvDocument& doc) {
  const auto cols = doc.columns({"city", "country", "population"});
  const auto& header = doc.rows.front().cells;
  std::vector<CityRecord> out;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, header.size());
    CityRecord c;
    c.city = row.cells[cols[0]];
    c.country = row.cells[cols[1]];
    c.population = doc.number(row, cols[2]);
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (k == cols[0] || k == cols[1] || k == cols[2]) continue;
      c.pressures[header[k]] = doc.number(row, k);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::map<std::string, std::string> parse_concordance(const CsvDocument& doc) {
  const auto cols = doc.columns({"sector", "group"});
  std::map<std::string, std::string> out;
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    doc.require_width(row, doc.rows[0].cells.size());
    if (!out.emplace(row.cells[cols[0]], row.cells[cols[1]]).second) {
      throw ParseError(ErrorKind::Structural, doc.file, row.line, cols[0] + 1,
                       "sector '" + row.cells[cols[0]] + "' mapped twice");
    }
  }
  return out;
}

CsvDocument read_document(const DatasetManifest& manifest, const std::string& key) {
  return parse_csv(manifest.read_verified(key), manifest.path(key).string());
}

MrioTable load_mrio(const DatasetManifest& manifest) {
  const auto z = read_document(manifest, keys::kZ);
  const auto y = read_document(manifest, keys::kY);
  if (manifest.has(keys::kX)) {
    const auto x = read_document(manifest, keys::kX);
    return parse_mrio(z, y, &x);
  }
  return parse_mrio(z, y);
}

std::vector<ExtensionAccount> load_extensions(const DatasetManifest& manifest,
                                              const MrioTable& table) {
  return parse_extensions(read_document(manifest, keys::kExtensions), table, &manifest.units);
}

ExtensionAccount load_extension(const DatasetManifest& manifest, const MrioTable& table,
                                const std::string& name) {
  for (auto& ext : load_extensions(manifest, table)) {
    if (ext.name == name) return std::move(ext);
  }
  throw Error(ErrorKind::Configuration, "dataset has no extension '" + name + "'");
}

const ExtensionAccount& Dataset::extension(const std::string& name) const {
  for (const auto& ext : extensions) {
    if (ext.name == name) return ext;
  }
  throw Error(ErrorKind::Configuration, "dataset has no extension '" + name + "'");
}

Dataset load_dataset(const DatasetManifest& manifest) {
  Dataset d;
  d.manifest = manifest;
  d.table = load_mrio(manifest);
  d.extensions = load_extensions(manifest, d.table);
  using namespace keys;
  if (manifest.has(kRegions)) d.regions = parse_region_stats(read_document(manifest, kRegions));
  if (manifest.has(kSectors)) d.sectors = parse_sector_stats(read_document(manifest, kSectors));
  if (manifest.has(kWatersheds)) d.watersheds = parse_watersheds(read_document(manifest, kWatersheds));
  if (manifest.has(kEcoregions)) d.ecoregions = parse_ecoregions(read_document(manifest, kEcoregions));
  if (manifest.has(kHistory)) d.history = parse_history(read_document(manifest, kHistory));
  if (manifest.has(kHouseholds)) d.households = parse_households(read_document(manifest, kHouseholds));
  if (manifest.has(kCities)) d.cities = parse_cities(read_document(manifest, kCities));
  if (manifest.has(kConcordance)) d.concordance = parse_concordance(read_document(manifest, kConcordance));
  return d;
}

}  // namespace pballoc::io
