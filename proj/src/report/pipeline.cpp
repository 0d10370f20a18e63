#include "pballoc/report/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <set>

#include "pballoc/error.hpp"
#include "pballoc/io/writers.hpp"
#include "pballoc/kernels.hpp"
#include "pballoc/mrio.hpp"
#include "pballoc/units.hpp"

namespace pballoc::report {

namespace {

namespace fs = std::filesystem;

// Per-boundary inputs shared by every perspective and approach.
struct BoundaryInputs {
  Boundary boundary;
  const ExtensionAccount* ext = nullptr;
  FootprintAccounts fp;       // in the extension's unit
  GlobalBudget global;
  double ext_to_report = 1.0;  // multiply extension-unit values by this
  bool withheld = false;
};

std::string field_name(const BoundaryInputs& b, Perspective p) {
  return b.ext->name + "/" + std::string(to_string(p));
}

const Vector& perspective_values(const BoundaryInputs& b, Perspective p) {
  return p == Perspective::Cba ? b.fp.cba : b.fp.pba;
}

const Vector& sectoral_values(const BoundaryInputs& b, Perspective p) {
  return p == Perspective::Cba ? b.fp.sectoral_cba : b.fp.sectoral_pba;
}

double unit_factor(const std::string& from, const std::string& to) {
  return convert(1.0, parse_unit(from), parse_unit(to));
}

BudgetSpec global_spec(const ScenarioConfig& cfg, Boundary b, double world_population) {
  switch (b) {
    case Boundary::ClimateCo2: return climate_yearly_budget(cfg.climate);
    case Boundary::ClimateGhg: return ghg_from_co2(climate_yearly_budget(cfg.climate), cfg.ghg_factor);
    case Boundary::Freshwater: return freshwater_budget(cfg.freshwater_km3);
    case Boundary::Biodiversity: return biodiversity_budget(world_population, cfg.biodiversity_epc_pico);
  }
  throw Error(ErrorKind::Configuration, "unknown boundary");
}

// Shares over the countries of the table, built lazily per approach.
class CountryShares {
 public:
  CountryShares(const ScenarioConfig& cfg, std::vector<EntityStats> stats, std::string gf_field)
      : cfg_(cfg), stats_(std::move(stats)), field_(std::move(gf_field)) {}

  const std::vector<EntityStats>& stats() const { return stats_; }

  const AllocationShares& get(Approach a) {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    AllocationShares s;
    switch (a) {
      case Approach::EPC: s = epc_shares(stats_); break;
      case Approach::GF: s = gf_shares(stats_, field_); break;
      case Approach::AP: s = ap_shares(stats_, cfg_.ap_alpha, cfg_.ap_missing_data); break;
      case Approach::VA: s = va_shares(stats_); break;
      case Approach::BA:
        s = blended_shares(get(Approach::EPC), get(Approach::GF), get(Approach::AP), cfg_.ba_weights);
        break;
    }
    return cache_.emplace(a, std::move(s)).first->second;
  }

  const AllocationShares& equal_blend() {
    if (!equal_) equal_ = blended_shares(get(Approach::EPC), get(Approach::GF), get(Approach::AP));
    return *equal_;
  }

 private:
  const ScenarioConfig& cfg_;
  std::vector<EntityStats> stats_;
  std::string field_;
  std::map<Approach, AllocationShares> cache_;
  std::optional<AllocationShares> equal_;
};

AllocationShares within_shares(const ScenarioConfig& cfg, std::span<const EntityStats> stats,
                               const std::string& field, Approach a) {
  switch (a) {
    case Approach::EPC: return epc_shares(stats);
    case Approach::GF: return gf_shares(stats, field);
    case Approach::AP: return ap_shares(stats, cfg.ap_alpha, cfg.ap_missing_data);
    case Approach::VA: return va_shares(stats);
    case Approach::BA:
      return blended_shares(epc_shares(stats), gf_shares(stats, field),
                            ap_shares(stats, cfg.ap_alpha, cfg.ap_missing_data), cfg.ba_weights);
  }
  throw Error(ErrorKind::Configuration, "unknown approach");
}

std::vector<EntityStats> table_country_stats(const io::Dataset& d) {
  if (d.regions.empty()) {
    throw Error(ErrorKind::Configuration, "dataset has no region statistics (regions file)");
  }
  std::vector<EntityStats> out;
  for (const auto& region : d.table.regions) {
    const auto it = std::find_if(d.regions.begin(), d.regions.end(),
                                 [&](const EntityStats& s) { return s.entity_id == region; });
    if (it == d.regions.end()) {
      throw Error(ErrorKind::Structural, "region statistics lack table region '" + region + "'");
    }
    EntityStats s = *it;
    s.pressures.clear();
    out.push_back(std::move(s));
  }
  for (const auto& s : d.regions) {
    if (std::find(d.table.regions.begin(), d.table.regions.end(), s.entity_id) == d.table.regions.end()) {
      throw Error(ErrorKind::Structural, "region statistics list '" + s.entity_id +
                                             "', which the table does not contain");
    }
  }
  return out;
}

std::size_t region_index(const MrioTable& t, const std::string& id) {
  const auto it = std::find(t.regions.begin(), t.regions.end(), id);
  if (it == t.regions.end()) {
    throw Error(ErrorKind::Configuration, "report entity '" + id + "' is not a table region");
  }
  return static_cast<std::size_t>(it - t.regions.begin());
}

// Within-country sector inputs, aggregated through the concordance when one is given.
std::vector<EntityStats> sector_stats(const io::Dataset& d, std::size_t r, const BoundaryInputs& b,
                                      Perspective p) {
  const MrioTable& t = d.table;
  const Vector& values = sectoral_values(b, p);
  const std::string field = field_name(b, p);
  std::vector<EntityStats> out;
  std::map<std::string, std::size_t> slot;
  for (std::size_t s = 0; s < t.n_sectors(); ++s) {
    std::string id = t.sectors[s];
    if (!d.concordance.empty()) {
      const auto c = d.concordance.find(id);
      if (c == d.concordance.end()) {
        throw Error(ErrorKind::Structural, "concordance does not map sector '" + id + "'");
      }
      id = c->second;
    }
    const auto st = std::find_if(d.sectors.begin(), d.sectors.end(), [&](const io::SectorStats& x) {
      return x.region == t.regions[r] && x.sector == t.sectors[s];
    });
    if (st == d.sectors.end()) {
      throw Error(ErrorKind::Structural,
                  "sector statistics lack " + t.regions[r] + "/" + t.sectors[s]);
    }
    auto [it, fresh] = slot.emplace(id, out.size());
    if (fresh) {
      EntityStats e;
      e.entity_id = id;
      e.pressures[field] = 0.0;
      out.push_back(std::move(e));
    }
    EntityStats& e = out[it->second];
    e.value_added += st->value_added;
    e.employment += st->employment;
    e.population = e.employment;  // employment stands in for headcount within a country
    e.pressures[field] += values[t.index(r, s)];
  }
  return out;
}

std::vector<EntityStats> city_stats(const io::Dataset& d, const std::string& country) {
  std::vector<EntityStats> out;
  for (const auto& c : d.cities) {
    if (c.country != country) continue;
    EntityStats e;
    e.entity_id = c.city;
    e.population = c.population;
    e.pressures = c.pressures;
    if (auto it = c.pressures.find("value_added"); it != c.pressures.end()) e.value_added = it->second;
    if (auto it = c.pressures.find("employment"); it != c.pressures.end()) e.employment = it->second;
    out.push_back(std::move(e));
  }
  return out;
}

struct TrendKey {
  std::string entity, extension, perspective;
  auto operator<=>(const TrendKey&) const = default;
};

std::map<TrendKey, TrendRow> build_trends(const std::vector<io::HistoryRecord>& history) {
  std::map<TrendKey, std::vector<const io::HistoryRecord*>> groups;
  for (const auto& h : history) groups[{h.entity, h.extension, h.perspective}].push_back(&h);
  std::map<TrendKey, TrendRow> out;
  for (auto& [key, recs] : groups) {
    std::sort(recs.begin(), recs.end(), [](auto* a, auto* b) { return a->year < b->year; });
    if (recs.size() < 2 || recs.front()->year == recs.back()->year) continue;
    TrendRow t;
    t.entity = key.entity;
    t.extension = key.extension;
    t.perspective = key.perspective;
    t.start_year = recs.front()->year;
    t.end_year = recs.back()->year;
    t.start = recs.front()->value;
    t.end = recs.back()->value;
    t.change_pct = change_pct(t.start, t.end);
    if (t.start > 0.0 && t.end > 0.0) {
      t.annual_rate = reduction_rate(t.start, t.end, t.start_year, t.end_year).rate;
    }
    out.emplace(key, std::move(t));
  }
  return out;
}

void fill_metrics(BudgetRow& row, const std::map<TrendKey, TrendRow>& trends,
                  const std::string& extension, int base_year, const std::vector<int>& targets) {
  if (auto it = trends.find({row.entity, extension, std::string(to_string(row.perspective))});
      it != trends.end()) {
    row.change_pct = it->second.change_pct;
  }
  if (!row.actual) return;
  if (row.budget > 0.0) row.over_under = over_under(*row.actual, row.budget);
  if (row.budget > 0.0 && *row.actual > 0.0) {
    for (int y : targets) row.rates.emplace_back(y, reduction_rate(*row.actual, row.budget, base_year, y));
  }
}

}  // namespace

ScenarioResult compute_scenario(const ScenarioConfig& cfg, const io::Dataset& data) {
  validate(cfg);
  ScenarioResult res;
  res.name = cfg.name;
  res.scope = cfg.scope;
  res.base_year = data.manifest.base_year > 0 ? data.manifest.base_year : cfg.climate.analysis_year;
  res.target_years = cfg.target_years;
  res.checksums = data.manifest.checksums;
  for (int y : cfg.target_years) {
    if (y <= res.base_year) {
      throw Error(ErrorKind::Configuration, "target year " + std::to_string(y) +
                                                " is not after the base year " + std::to_string(res.base_year));
    }
  }
  res.warnings = data.watersheds.warnings;
  res.warnings.insert(res.warnings.end(), data.ecoregions.warnings.begin(), data.ecoregions.warnings.end());

  const MrioTable& t = data.table;
  const LeontiefModel model(t);
  const auto countries = table_country_stats(data);
  Vector population;
  for (const auto& c : countries) population.push_back(c.population);
  const double world_population = kernels::sum(population);

  std::vector<std::string> report;
  if (cfg.report_entities.empty()) report = t.regions;
  else report = cfg.report_entities;
  for (const auto& r : report) region_index(t, r);

  const auto trends = build_trends(data.history);
  for (const auto& [key, row] : trends) res.trends.push_back(row);

  std::vector<BoundaryInputs> inputs;
  for (Boundary b : cfg.boundaries) {
    BoundaryInputs in;
    in.boundary = b;
    in.ext = &data.extension(cfg.extensions.at(b));
    in.fp = model.footprint(*in.ext);
    const std::string& report_unit = cfg.report_units.at(b);
    in.global.boundary = b;
    in.global.spec = global_spec(cfg, b, world_population);
    validate(in.global.spec);
    in.global.report_unit = report_unit;
    try {
      in.global.in_report_unit = in.global.spec.global_annual * unit_factor(in.global.spec.unit, report_unit);
      in.ext_to_report = unit_factor(in.ext->unit, report_unit);
    } catch (const Error& e) {
      throw Error(ErrorKind::Configuration, std::string(to_string(b)) + " is measured by extension '" +
                                                in.ext->name + "' in " + in.ext->unit + ": " + e.message());
    }
    in.withheld = cfg.withhold_actual.count(b) != 0;
    res.global.push_back(in.global);
    inputs.push_back(std::move(in));
  }

  const auto selected = [&](Approach a) {
    return std::find(cfg.approaches.begin(), cfg.approaches.end(), a) != cfg.approaches.end();
  };
  const bool want_summary = selected(Approach::BA) ||
                            (selected(Approach::EPC) && selected(Approach::GF) && selected(Approach::AP));

  for (const auto& in : inputs) {
    const BudgetSpec report_budget{in.boundary, in.global.in_report_unit, in.global.report_unit, in.global.spec.basis};
    const std::string pc_unit = per_capita_symbol(parse_unit(in.global.report_unit));
    for (Perspective p : cfg.perspectives) {
      auto stats = countries;
      const std::string field = field_name(in, p);
      const Vector& values = perspective_values(in, p);
      for (std::size_t r = 0; r < stats.size(); ++r) stats[r].pressures[field] = values[r];
      CountryShares shares(cfg, std::move(stats), field);

      for (const auto& entity : report) {
        const std::size_t r = region_index(t, entity);
        const double pop = countries[r].population;
        const std::optional<double> actual =
            in.withheld ? std::nullopt : std::optional<double>(values[r] * in.ext_to_report);

        if (want_summary) {
          SummaryRow sum;
          sum.entity = entity;
          sum.boundary = in.boundary;
          sum.perspective = p;
          sum.unit = pc_unit;
          const auto pc = [&](const AllocationShares& s) { return s.shares[r] * in.global.in_report_unit / pop; };
          sum.ap = pc(shares.get(Approach::AP));
          sum.epc = pc(shares.get(Approach::EPC));
          sum.gf = pc(shares.get(Approach::GF));
          sum.min = std::min({sum.ap, sum.epc, sum.gf});
          sum.max = std::max({sum.ap, sum.epc, sum.gf});
          sum.mean = pc(shares.equal_blend());
          if (actual) {
            sum.actual = *actual / pop;
            sum.actual_over_mean = over_under(*sum.actual, sum.mean);
          }
          res.summary.push_back(sum);
        }

        for (Approach a : cfg.approaches) {
          const AllocationShares& country = shares.get(a);
          if (cfg.scope == Scope::Countries) {
            const auto alloc = allocate_budget(country, report_budget, population);
            BudgetRow row;
            row.entity = entity;
            row.boundary = in.boundary;
            row.perspective = p;
            row.approach = a;
            row.share = country.shares[r];
            row.budget = alloc[r].budget;
            row.unit = in.global.report_unit;
            row.population = pop;
            row.budget_per_capita = alloc[r].per_capita;
            row.actual = actual;
            if (actual && pop > 0.0) row.actual_per_capita = *actual / pop;
            fill_metrics(row, trends, in.ext->name, res.base_year, cfg.target_years);
            res.budgets.push_back(std::move(row));
            continue;
          }

          std::vector<EntityStats> subs = cfg.scope == Scope::Sectors ? sector_stats(data, r, in, p)
                                                                      : city_stats(data, entity);
          if (subs.empty()) {
            res.warnings.push_back("no cities listed for " + entity);
            continue;
          }
          if (cfg.scope == Scope::Cities) {
            for (const auto& c : subs) {
              if (!c.pressures.count(field)) {
                throw Error(ErrorKind::Structural, "city " + c.entity_id + " has no '" + field + "' column");
              }
            }
          }
          std::map<std::string, AllocationShares> within{{entity, within_shares(cfg, subs, field, a)}};
          const auto split = two_stage_allocate(country, within, report_budget);
          for (std::size_t k = 0; k < split.size(); ++k) {
            const auto& sub = subs[k];
            BudgetRow row;
            row.entity = cfg.scope == Scope::Sectors ? entity + "/" + sub.entity_id : sub.entity_id;
            row.parent = entity;
            row.boundary = in.boundary;
            row.perspective = p;
            row.approach = a;
            row.share = split[k].global_share;
            row.budget = split[k].budget;
            row.unit = in.global.report_unit;
            if (cfg.scope == Scope::Cities) {
              row.population = sub.population;
              if (sub.population > 0.0) row.budget_per_capita = row.budget / sub.population;
            }
            if (!in.withheld) {
              row.actual = sub.pressures.at(field) * in.ext_to_report;
              if (row.population && *row.population > 0.0) row.actual_per_capita = *row.actual / *row.population;
            }
            fill_metrics(row, trends, in.ext->name, res.base_year, cfg.target_years);
            res.budgets.push_back(std::move(row));
          }
        }
      }
    }
  }

  // Local boundaries: country-level shares for EPC, AP and VA; GF from the unit itself.
  std::vector<std::string> local_countries = cfg.local.countries.empty() ? report : cfg.local.countries;
  for (const auto& c : local_countries) region_index(t, c);
  const bool want_ws = cfg.local.watersheds && !data.watersheds.records.empty();
  const bool want_eco = cfg.local.ecoregions && !data.ecoregions.records.empty();
  if (want_ws || want_eco) {
    std::string water_field;
    auto stats = countries;
    if (cfg.local.watershed_gf == WatershedGfBasis::Global) {
      const auto& ext = data.extension(cfg.extensions.at(Boundary::Freshwater));
      water_field = ext.name + "/cba";
      const auto fp = model.footprint(ext);
      for (std::size_t r = 0; r < stats.size(); ++r) stats[r].pressures[water_field] = fp.cba[r];
    }
    CountryShares global(cfg, std::move(stats), water_field);
    const auto local_shares = [&](Approach a, const AllocationShares& unit_gf) -> AllocationShares {
      switch (a) {
        case Approach::GF: return unit_gf;
        case Approach::BA:
          return blended_shares(global.get(Approach::EPC), unit_gf, global.get(Approach::AP), cfg.ba_weights);
        default: return global.get(a);
      }
    };
    if (want_ws) {
      for (const auto& w : data.watersheds.records) {
        const bool need_gf = std::find_if(cfg.approaches.begin(), cfg.approaches.end(), [](Approach a) {
                               return a == Approach::GF || a == Approach::BA;
                             }) != cfg.approaches.end();
        AllocationShares gf;
        if (need_gf) {
          gf = cfg.local.watershed_gf == WatershedGfBasis::Global ? global.get(Approach::GF)
                                                                 : watershed_gf_shares(w, t.regions);
        }
        for (Approach a : cfg.approaches) {
          const auto s = local_shares(a, gf);
          for (const auto& c : local_countries) res.watersheds.push_back(evaluate_watershed(w, s, c));
        }
      }
    }
    if (want_eco) {
      for (const auto& e : data.ecoregions.records) {
        const bool need_gf = std::find_if(cfg.approaches.begin(), cfg.approaches.end(), [](Approach a) {
                               return a == Approach::GF || a == Approach::BA;
                             }) != cfg.approaches.end();
        AllocationShares gf;
        if (need_gf) gf = ecoregion_gf_shares(e, t.regions);
        for (Approach a : cfg.approaches) {
          const auto s = local_shares(a, gf);
          for (const auto& c : local_countries) res.ecoregions.push_back(evaluate_ecoregion(e, s, c));
        }
      }
    }
  }

  std::map<std::string, Vector> households;
  for (const auto& h : data.households) households[h.extension].push_back(h.value);
  for (const auto& [ext, values] : households) {
    res.inequality.push_back(InequalityRow{ext, values.size(), lorenz_gini(values)});
  }
  return res;
}

namespace {

std::string sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string opt_fixed(const std::optional<double>& v, int decimals, const char* missing = "") {
  return v ? round_fixed(*v, decimals) : missing;
}

std::string line(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ",";
    out += io::csv_escape(c);
    first = false;
  }
  return out + "\n";
}

std::string join_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += io::csv_escape(cells[i]);
  }
  return out + "\n";
}

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string render_local(const std::vector<LocalSosResult>& rows) {
  std::string out = line({"unit_id", "country", "approach", "a_sos", "actual", "abs_transgression",
                          "rel_transgression", "band"});
  for (const auto& r : rows) {
    out += line({r.unit_id, r.country, std::string(to_string(r.approach)), round_fixed(r.a_sos, 3),
                 round_fixed(r.actual, 3), round_fixed(r.abs_transgression, 3),
                 r.rel.ratio ? round_fixed(*r.rel.ratio, 2) : "no footprint",
                 std::string(to_string(r.rel.band))});
  }
  return out;
}

nlohmann::json local_json(const std::vector<LocalSosResult>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"unit_id", r.unit_id},
                   {"country", r.country},
                   {"approach", to_string(r.approach)},
                   {"a_sos", r.a_sos},
                   {"actual", r.actual},
                   {"abs_transgression", r.abs_transgression},
                   {"rel_transgression", opt_json(r.rel.ratio)},
                   {"no_footprint", r.rel.no_footprint()},
                   {"band", to_string(r.rel.band)}});
  }
  return arr;
}

}  // namespace

std::map<std::string, std::string> render_reports(const ScenarioResult& res) {
  using nlohmann::json;
  std::map<std::string, std::string> files;

  {
    std::string out = line({"boundary", "value", "unit", "report_value", "report_unit"});
    for (const auto& g : res.global) {
      out += line({std::string(to_string(g.boundary)), sig(g.spec.global_annual), g.spec.unit,
                   sig(g.in_report_unit), g.report_unit});
    }
    files["global_budgets.csv"] = out;
  }

  {
    std::vector<std::string> header{"scope", "entity", "parent", "boundary", "perspective", "approach",
                                    "share", "budget", "unit", "population", "budget_per_capita",
                                    "actual", "actual_per_capita", "over_under", "change_pct"};
    for (int y : res.target_years) header.push_back("rate_pct_" + std::to_string(y));
    for (int y : res.target_years) header.push_back("compliant_" + std::to_string(y));
    std::string out = join_line(header);
    for (const auto& r : res.budgets) {
      const int d = per_capita_decimals(r.boundary);
      std::vector<std::string> cells{std::string(to_string(res.scope)),
                                     r.entity,
                                     r.parent,
                                     std::string(to_string(r.boundary)),
                                     std::string(to_string(r.perspective)),
                                     std::string(to_string(r.approach)),
                                     sig(r.share),
                                     sig(r.budget),
                                     r.unit,
                                     r.population ? sig(*r.population) : "",
                                     opt_fixed(r.budget_per_capita, d),
                                     r.actual ? sig(*r.actual) : "n.a.",
                                     opt_fixed(r.actual_per_capita, d, r.actual ? "" : "n.a."),
                                     opt_fixed(r.over_under, 2, r.actual ? "" : "n.a."),
                                     opt_fixed(r.change_pct, 1)};
      for (int y : res.target_years) {
        const auto it = std::find_if(r.rates.begin(), r.rates.end(), [&](auto& p) { return p.first == y; });
        cells.push_back(it == r.rates.end() ? "" : round_fixed(it->second.rate * 100.0, 2));
      }
      for (int y : res.target_years) {
        const auto it = std::find_if(r.rates.begin(), r.rates.end(), [&](auto& p) { return p.first == y; });
        cells.push_back(it == r.rates.end() ? "" : (it->second.already_compliant ? "yes" : "no"));
      }
      out += join_line(cells);
    }
    files["budgets.csv"] = out;
  }

  {
    std::string out = line({"entity", "boundary", "perspective", "unit", "ap", "epc", "gf", "min",
                            "max", "mean", "actual", "actual_over_mean"});
    for (const auto& s : res.summary) {
      const int d = per_capita_decimals(s.boundary);
      out += line({s.entity, std::string(to_string(s.boundary)), std::string(to_string(s.perspective)),
                   s.unit, round_fixed(s.ap, d), round_fixed(s.epc, d), round_fixed(s.gf, d),
                   round_fixed(s.min, d), round_fixed(s.max, d), round_fixed(s.mean, d),
                   opt_fixed(s.actual, d, "n.a."), opt_fixed(s.actual_over_mean, 2, "n.a.")});
    }
    files["summary.csv"] = out;
  }

  files["local_watersheds.csv"] = render_local(res.watersheds);
  files["local_ecoregions.csv"] = render_local(res.ecoregions);

  {
    std::string out = line({"entity", "extension", "perspective", "start_year", "end_year", "start",
                            "end", "change_pct", "annual_rate_pct"});
    for (const auto& t : res.trends) {
      out += line({t.entity, t.extension, t.perspective, std::to_string(t.start_year),
                   std::to_string(t.end_year), sig(t.start), sig(t.end), opt_fixed(t.change_pct, 1),
                   t.annual_rate ? round_fixed(*t.annual_rate * 100.0, 2) : ""});
    }
    files["trends.csv"] = out;
  }

  {
    std::string ineq = line({"extension", "n", "gini", "top_population_share", "top_value_share"});
    std::string curve = line({"extension", "population_share", "value_share"});
    for (const auto& q : res.inequality) {
      ineq += line({q.extension, std::to_string(q.n), round_fixed(q.lorenz.gini, 3),
                    round_fixed(q.lorenz.top_half.population_share, 3),
                    round_fixed(q.lorenz.top_half.value_share, 3)});
      for (const auto& p : q.lorenz.curve) {
        curve += line({q.extension, round_fixed(p.population_share, 4), round_fixed(p.value_share, 4)});
      }
    }
    files["inequality.csv"] = ineq;
    files["lorenz.csv"] = curve;
  }

  json j;
  j["scenario"] = res.name;
  j["scope"] = to_string(res.scope);
  j["base_year"] = res.base_year;
  j["target_years"] = res.target_years;
  j["dataset_checksums"] = res.checksums;
  // Downstream plots clip per-capita change panels to this range; values here are unclipped.
  j["plot_hints"] = {{"change_panel_clip", {0, 17}}};
  j["warnings"] = res.warnings;
  j["global_budgets"] = json::array();
  for (const auto& g : res.global) {
    j["global_budgets"].push_back({{"boundary", to_string(g.boundary)},
                                   {"value", g.spec.global_annual},
                                   {"unit", g.spec.unit},
                                   {"report_value", g.in_report_unit},
                                   {"report_unit", g.report_unit}});
  }
  j["budgets"] = json::array();
  for (const auto& r : res.budgets) {
    json rates = json::object();
    for (const auto& [y, rate] : r.rates) {
      rates[std::to_string(y)] = {{"rate", rate.rate}, {"already_compliant", rate.already_compliant}};
    }
    j["budgets"].push_back({{"entity", r.entity},
                            {"parent", r.parent},
                            {"boundary", to_string(r.boundary)},
                            {"perspective", to_string(r.perspective)},
                            {"approach", to_string(r.approach)},
                            {"share", r.share},
                            {"budget", r.budget},
                            {"unit", r.unit},
                            {"population", opt_json(r.population)},
                            {"budget_per_capita", opt_json(r.budget_per_capita)},
                            {"actual", opt_json(r.actual)},
                            {"actual_per_capita", opt_json(r.actual_per_capita)},
                            {"over_under", opt_json(r.over_under)},
                            {"change_pct", opt_json(r.change_pct)},
                            {"reduction_rates", rates}});
  }
  j["summary"] = json::array();
  for (const auto& s : res.summary) {
    j["summary"].push_back({{"entity", s.entity},
                            {"boundary", to_string(s.boundary)},
                            {"perspective", to_string(s.perspective)},
                            {"unit", s.unit},
                            {"ap", s.ap},
                            {"epc", s.epc},
                            {"gf", s.gf},
                            {"min", s.min},
                            {"max", s.max},
                            {"mean", s.mean},
                            {"actual", opt_json(s.actual)},
                            {"actual_over_mean", opt_json(s.actual_over_mean)}});
  }
  j["local_watersheds"] = local_json(res.watersheds);
  j["local_ecoregions"] = local_json(res.ecoregions);
  j["trends"] = json::array();
  for (const auto& t : res.trends) {
    j["trends"].push_back({{"entity", t.entity},
                           {"extension", t.extension},
                           {"perspective", t.perspective},
                           {"start_year", t.start_year},
                           {"end_year", t.end_year},
                           {"start", t.start},
                           {"end", t.end},
                           {"change_pct", opt_json(t.change_pct)},
                           {"annual_rate", opt_json(t.annual_rate)}});
  }
  j["inequality"] = json::array();
  for (const auto& q : res.inequality) {
    json curve = json::array();
    for (const auto& p : q.lorenz.curve) curve.push_back({p.population_share, p.value_share});
    j["inequality"].push_back({{"extension", q.extension},
                               {"n", q.n},
                               {"gini", q.lorenz.gini},
                               {"top_population_share", q.lorenz.top_half.population_share},
                               {"top_value_share", q.lorenz.top_half.value_share},
                               {"lorenz", curve}});
  }
  files["report.json"] = j.dump(2) + "\n";
  return files;
}

std::vector<fs::path> run_scenario(const ScenarioConfig& config) {
  std::vector<fs::path> written;
  try {
    validate(config);
    const auto manifest = io::load_manifest(config.manifest);
    const auto data = io::load_dataset(manifest);
    const auto files = render_reports(compute_scenario(config, data));
    fs::create_directories(config.output_dir);
    for (const auto& [name, bytes] : files) {
      const fs::path p = config.output_dir / name;
      written.push_back(p);
      io::write_file(p, bytes);
    }
    return written;
  } catch (const Error& e) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw Error(e.kind(), "scenario " + config.name + ": " + e.message());
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

}  // namespace pballoc::report
