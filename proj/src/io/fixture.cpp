#include "pballoc/io/fixture.hpp"

#include <cmath>
#include <json.hpp>
#include <random>

#include "pballoc/error.hpp"
#include "pballoc/io/checksum.hpp"
#include "pballoc/io/writers.hpp"

namespace pballoc::io {

namespace {

// Portable uniform in [0, 1): std::uniform_real_distribution is not specified
// bit for bit across standard libraries.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 engine_;
};

// Random weights in [0.1, 1.1) normalized to `total`.
std::vector<double> split(Uniform& u, std::size_t n, double total) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& v : w) sum += (v = u(0.1, 1.1));
  for (auto& v : w) v *= total / sum;
  return w;
}

}  // namespace

void validate(const FixtureSpec& spec) {
  if (spec.n_regions == 0 || spec.n_sectors == 0) {
    throw Error(ErrorKind::Configuration, "fixture needs at least one region and one sector");
  }
  if (!(spec.trade_intensity >= 0.0 && spec.trade_intensity <= 1.0)) {
    throw Error(ErrorKind::Configuration, "trade_intensity must lie in [0, 1]");
  }
  if (spec.n_regions == 1 && spec.trade_intensity > 0.0) {
    throw Error(ErrorKind::Configuration, "a single-region fixture cannot trade");
  }
  for (const auto& p : spec.pressures) {
    if (p.name.empty()) throw Error(ErrorKind::Configuration, "pressure profile without a name");
    parse_unit(p.unit);
    if (!(p.intensity_min >= 0.0 && p.intensity_min <= p.intensity_max) ||
        !std::isfinite(p.intensity_max)) {
      throw Error(ErrorKind::Configuration, "pressure '" + p.name + "' has an invalid intensity range");
    }
    if (!(p.household_share >= 0.0) || !std::isfinite(p.household_share)) {
      throw Error(ErrorKind::Configuration, "pressure '" + p.name + "' has a negative household share");
    }
  }
}

FixtureSpec parse_fixture_spec(const std::string& json_text, const std::string& label) {
  using nlohmann::json;
  FixtureSpec spec;
  try {
    const json j = json::parse(json_text);
    spec.n_regions = j.value("n_regions", spec.n_regions);
    spec.n_sectors = j.value("n_sectors", spec.n_sectors);
    spec.trade_intensity = j.value("trade_intensity", spec.trade_intensity);
    spec.seed = j.value("seed", spec.seed);
    spec.n_watersheds = j.value("n_watersheds", spec.n_watersheds);
    spec.n_ecoregions = j.value("n_ecoregions", spec.n_ecoregions);
    spec.base_year = j.value("base_year", spec.base_year);
    if (j.contains("pressures")) {
      spec.pressures.clear();
      for (const auto& p : j.at("pressures")) {
        PressureProfile prof;
        prof.name = p.value("name", prof.name);
        prof.unit = p.value("unit", prof.unit);
        if (p.contains("intensity")) {
          prof.intensity_min = p.at("intensity").at(0).get<double>();
          prof.intensity_max = p.at("intensity").at(1).get<double>();
        }
        prof.household_share = p.value("household_share", prof.household_share);
        spec.pressures.push_back(std::move(prof));
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(ErrorKind::Parse, label, 0, 0, e.what());
  }
  validate(spec);
  return spec;
}

Fixture generate_fixture(const FixtureSpec& spec) {
  validate(spec);
  Uniform u(spec.seed);
  const std::size_t n = spec.n_regions;
  const std::size_t m = spec.n_sectors;
  const std::size_t nm = n * m;

  Fixture fx;
  MrioTable& t = fx.table;
  for (std::size_t r = 0; r < n; ++r) t.regions.push_back("R" + std::to_string(r + 1));
  for (std::size_t s = 0; s < m; ++s) t.sectors.push_back("S" + std::to_string(s + 1));

  Matrix a(nm, nm);
  for (std::size_t j = 0; j < nm; ++j) {
    const double column = u(0.1, 0.7);
    const std::size_t home = t.region_of(j);
    for (std::size_t r = 0; r < n; ++r) {
      double block;
      if (n == 1) block = column;
      else if (r == home) block = column * (1.0 - spec.trade_intensity);
      else block = column * spec.trade_intensity / static_cast<double>(n - 1);
      const auto w = split(u, m, block);
      for (std::size_t s = 0; s < m; ++s) a(t.index(r, s), j) = w[s];
    }
  }

  t.y = Matrix(nm, n);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t r = 0; r < n; ++r) {
      t.y(i, r) = r == t.region_of(i) ? u(50.0, 150.0) : spec.trade_intensity * u(5.0, 15.0);
    }
  }

  Matrix i_minus_a = Matrix::identity(nm);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t j = 0; j < nm; ++j) i_minus_a(i, j) -= a(i, j);
  }
  t.x = LuFactorization(i_minus_a).solve(t.y.row_sums());
  t.z = Matrix(nm, nm);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t j = 0; j < nm; ++j) t.z(i, j) = a(i, j) * t.x[j];
  }
  validate(t);

  for (const auto& p : spec.pressures) {
    ExtensionAccount ext;
    ext.name = p.name;
    ext.unit = parse_unit(p.unit).symbol;
    ext.f.resize(nm);
    ext.f_hh.assign(n, 0.0);
    for (std::size_t i = 0; i < nm; ++i) {
      ext.f[i] = t.x[i] * u(p.intensity_min, p.intensity_max);
      ext.f_hh[t.region_of(i)] += p.household_share * ext.f[i];
    }
    fx.extensions.push_back(std::move(ext));
  }

  const Vector inputs = t.z.column_sums();
  fx.regions.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto& e = fx.regions[r];
    e.entity_id = t.regions[r];
    e.population = std::round(u(1.0e6, 1.0e7));
  }
  for (std::size_t i = 0; i < nm; ++i) {
    SectorStats s;
    s.region = t.regions[t.region_of(i)];
    s.sector = t.sectors[i % m];
    s.value_added = t.x[i] - inputs[i];
    s.employment = s.value_added * u(0.5, 2.0);
    fx.regions[t.region_of(i)].value_added += s.value_added;
    fx.regions[t.region_of(i)].employment += s.employment;
    fx.sectors.push_back(std::move(s));
  }

  const LeontiefModel model(t);
  for (const auto& ext : fx.extensions) {
    const auto acc = model.footprint(ext);
    for (std::size_t r = 0; r < n; ++r) {
      fx.regions[r].pressures[ext.name + "/pba"] = acc.pba[r];
      fx.regions[r].pressures[ext.name + "/cba"] = acc.cba[r];
    }
  }

  for (std::size_t k = 0; k < spec.n_watersheds; ++k) {
    WatershedRecord w;
    w.watershed_id = "W" + std::to_string(k + 1);
    w.maf = u(100.0, 1000.0);
    w.ewr = w.maf * u(0.2, 0.7);
    for (const auto& r : t.regions) w.country_consumption[r] = u(1.0, 60.0);
    for (const auto& [c, v] : w.country_consumption) w.hwc += v;
    fx.watersheds.push_back(std::move(w));
  }
  for (std::size_t k = 0; k < spec.n_ecoregions; ++k) {
    EcoregionRecord e;
    e.ecoregion_id = "E" + std::to_string(k + 1);
    e.protected_frac = u();
    e.habitat_frac = u() * (1.0 - e.protected_frac);
    e.declared_status = e.status();
    for (const auto& r : t.regions) e.country_loss[r] = u(0.0, 5.0);
    fx.ecoregions.push_back(std::move(e));
  }
  return fx;
}

std::filesystem::path write_fixture(const Fixture& fx, const std::filesystem::path& dir,
                                    int base_year) {
  DatasetManifest m;
  m.root = dir;
  m.base_year = base_year;
  const auto put = [&](const char* key, const std::string& file, const std::string& bytes) {
    write_file(dir / file, bytes);
    m.files[key] = file;
    m.checksums[key] = "sha256:" + sha256_hex(bytes);
  };
  put(keys::kZ, "z.csv", serialize_z(fx.table));
  put(keys::kY, "y.csv", serialize_y(fx.table));
  put(keys::kX, "x.csv", serialize_x(fx.table));
  put(keys::kExtensions, "extensions.csv", serialize_extensions(fx.extensions, fx.table));
  put(keys::kRegions, "regions.csv", serialize_region_stats(fx.regions));
  put(keys::kSectors, "sectors.csv", serialize_sector_stats(fx.sectors));
  if (!fx.watersheds.empty()) put(keys::kWatersheds, "watersheds.csv", serialize_watersheds(fx.watersheds));
  if (!fx.ecoregions.empty()) put(keys::kEcoregions, "ecoregions.csv", serialize_ecoregions(fx.ecoregions));
  for (const auto& ext : fx.extensions) m.units[ext.name] = ext.unit;
  const auto path = dir / "manifest.json";
  write_file(path, to_json(m));
  return path;
}

}  // namespace pballoc::io
