#include "pballoc/io/writers.hpp"

#include <fstream>

#include "pballoc/error.hpp"

namespace pballoc::io {

namespace {

std::string matrix_header(const MrioTable& t, const std::string& corner_top,
                          const std::string& corner_bottom) {
  std::string top = "region," + corner_top;
  std::string bottom = "," + corner_bottom;
  for (const auto& r : t.regions) {
    for (const auto& s : t.sectors) {
      top += "," + csv_escape(r);
      bottom += "," + csv_escape(s);
    }
  }
  return top + "\n" + bottom + "\n";
}

std::string row_label(const MrioTable& t, std::size_t i) {
  return csv_escape(t.regions[t.region_of(i)]) + "," + csv_escape(t.sectors[i % t.n_sectors()]);
}

}  // namespace

std::string serialize_z(const MrioTable& t) {
  std::string out = matrix_header(t, "", "sector");
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += row_label(t, i);
    for (double v : t.z.row(i)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string serialize_y(const MrioTable& t) {
  std::string out = "region,";
  std::string bottom = ",sector";
  for (const auto& r : t.regions) {
    out += "," + csv_escape(r);
    bottom += ",final_demand";
  }
  out += "\n" + bottom + "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += row_label(t, i);
    for (double v : t.y.row(i)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string serialize_x(const MrioTable& t) {
  std::string out = "region,sector,x\n";
  for (std::size_t i = 0; i < t.size(); ++i) out += row_label(t, i) + "," + format_double(t.x[i]) + "\n";
  return out;
}

std::string serialize_extensions(const std::vector<ExtensionAccount>& exts, const MrioTable& t) {
  std::string top = ",";
  std::string bottom = "stressor,unit";
  for (const auto& r : t.regions) {
    for (const auto& s : t.sectors) {
      top += "," + csv_escape(r);
      bottom += "," + csv_escape(s);
    }
  }
  for (const auto& r : t.regions) {
    top += "," + csv_escape(r);
    bottom += std::string(",") + kHouseholdSector;
  }
  std::string out = top + "\n" + bottom + "\n";
  for (const auto& e : exts) {
    out += csv_escape(e.name) + "," + csv_escape(e.unit);
    for (double v : e.f) out += "," + format_double(v);
    for (double v : e.f_hh) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string serialize_region_stats(const std::vector<EntityStats>& stats) {
  std::string out = "entity,population,value_added,employment\n";
  for (const auto& s : stats) {
    out += csv_escape(s.entity_id) + "," + format_double(s.population) + "," +
           format_double(s.value_added) + "," + format_double(s.employment) + "\n";
  }
  return out;
}

std::string serialize_sector_stats(const std::vector<SectorStats>& stats) {
  std::string out = "region,sector,value_added,employment\n";
  for (const auto& s : stats) {
    out += csv_escape(s.region) + "," + csv_escape(s.sector) + "," + format_double(s.value_added) +
           "," + format_double(s.employment) + "\n";
  }
  return out;
}

std::string serialize_watersheds(const std::vector<WatershedRecord>& recs) {
  std::string out = "unit_id,field,value\n";
  for (const auto& r : recs) {
    const std::string id = csv_escape(r.watershed_id);
    out += id + ",MAF," + format_double(r.maf) + "\n";
    out += id + ",HWC," + format_double(r.hwc) + "\n";
    out += id + ",EWR," + format_double(r.ewr) + "\n";
    for (const auto& [c, v] : r.country_consumption) {
      out += id + "," + csv_escape("consumption:" + c) + "," + format_double(v) + "\n";
    }
  }
  return out;
}

std::string serialize_ecoregions(const std::vector<EcoregionRecord>& recs) {
  std::string out = "unit_id,field,value\n";
  for (const auto& r : recs) {
    const std::string id = csv_escape(r.ecoregion_id);
    out += id + ",protected_frac," + format_double(r.protected_frac) + "\n";
    out += id + ",habitat_frac," + format_double(r.habitat_frac) + "\n";
    if (r.declared_status) out += id + ",status," + std::string(to_string(*r.declared_status)) + "\n";
    for (const auto& [c, v] : r.country_loss) {
      out += id + "," + csv_escape("loss:" + c) + "," + format_double(v) + "\n";
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Structural, "cannot write " + path.string());
  out << bytes;
  if (!out) throw Error(ErrorKind::Structural, "write failed for " + path.string());
}

}  // namespace pballoc::io
