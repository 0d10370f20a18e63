#include "pballoc/local_boundaries.hpp"

#include <cmath>

#include "pballoc/error.hpp"
#include "pballoc/kernels.hpp"

namespace pballoc {

namespace {

void require_volume(double v, const std::string& id, const char* field) {
  if (!std::isfinite(v) || v < 0.0) {
    throw Error(ErrorKind::InvalidInput,
                "watershed " + id + ": " + field + " must be a non-negative number, got " +
                    std::to_string(v));
  }
}

void require_fraction(double v, const char* field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorKind::InvalidInput,
                std::string(field) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

AllocationShares shares_from_map(const std::map<std::string, double>& values, Approach approach,
                                 const std::string& unit_id, const char* what,
                                 std::span<const std::string> entities) {
  AllocationShares out;
  out.approach = approach;
  if (entities.empty()) {
    for (const auto& [country, v] : values) {
      out.entities.push_back(country);
      out.shares.push_back(v);
    }
  } else {
    out.entities.assign(entities.begin(), entities.end());
    out.shares.assign(entities.size(), 0.0);
    for (const auto& [country, v] : values) {
      const auto idx = out.find(country);
      if (!idx) {
        throw Error(ErrorKind::Structural, unit_id + " lists " + what + " for unknown country '" +
                                               country + "'");
      }
      out.shares[*idx] = v;
    }
  }
  const double total = kernels::sum(out.shares);
  if (!(total > 0.0)) {
    throw Error(ErrorKind::IncompleteUnit,
                unit_id + " has no recorded " + what + " to derive shares from");
  }
  kernels::scale(1.0 / total, out.shares);
  return out;
}

}  // namespace

void validate(const WatershedRecord& rec) {
  require_volume(rec.maf, rec.watershed_id, "MAF");
  require_volume(rec.hwc, rec.watershed_id, "HWC");
  require_volume(rec.ewr, rec.watershed_id, "EWR");
  if (rec.ewr > rec.maf) {
    throw Error(ErrorKind::InvalidInput, "watershed " + rec.watershed_id + ": EWR " +
                                             std::to_string(rec.ewr) + " exceeds MAF " +
                                             std::to_string(rec.maf));
  }
  for (const auto& [country, v] : rec.country_consumption) {
    require_volume(v, rec.watershed_id, ("consumption of " + country).c_str());
  }
}

double watershed_lb(const WatershedRecord& rec) noexcept {
  return rec.maf - (rec.hwc + rec.ewr + kWaterPrecaution * rec.maf);
}

double watershed_consumption_limit(const WatershedRecord& rec) noexcept {
  return rec.maf - rec.ewr - kWaterPrecaution * rec.maf;
}

std::string_view to_string(EcoregionStatus s) noexcept {
  switch (s) {
    case EcoregionStatus::HalfProtected: return "half_protected";
    case EcoregionStatus::CouldReachHalf: return "could_reach_half";
    case EcoregionStatus::CouldRecover: return "could_recover";
    case EcoregionStatus::Imperilled: return "imperilled";
  }
  return "?";
}

EcoregionStatus parse_ecoregion_status(std::string_view text) {
  for (auto s : {EcoregionStatus::HalfProtected, EcoregionStatus::CouldReachHalf,
                 EcoregionStatus::CouldRecover, EcoregionStatus::Imperilled}) {
    if (text == to_string(s)) return s;
  }
  if (text == "HalfProtected") return EcoregionStatus::HalfProtected;
  if (text == "CouldReachHalf") return EcoregionStatus::CouldReachHalf;
  if (text == "CouldRecover") return EcoregionStatus::CouldRecover;
  if (text == "Imperilled" || text == "imperiled") return EcoregionStatus::Imperilled;
  throw Error(ErrorKind::InvalidInput, "unknown ecoregion status '" + std::string(text) + "'");
}

EcoregionStatus classify_ecoregion(double protected_frac, double habitat_frac) {
  require_fraction(protected_frac, "protected fraction");
  require_fraction(habitat_frac, "habitat fraction");
  if (protected_frac > 0.5) return EcoregionStatus::HalfProtected;
  const double potential = protected_frac + habitat_frac;
  if (potential > 0.5) return EcoregionStatus::CouldReachHalf;
  if (potential > 0.2) return EcoregionStatus::CouldRecover;
  return EcoregionStatus::Imperilled;
}

double ecoregion_reduction_target(EcoregionStatus status) noexcept {
  switch (status) {
    case EcoregionStatus::HalfProtected: return 0.0;
    case EcoregionStatus::CouldReachHalf: return 0.10;
    case EcoregionStatus::CouldRecover: return 0.30;
    case EcoregionStatus::Imperilled: return 0.50;
  }
  return 0.0;
}

void validate(const EcoregionRecord& rec) {
  try {
    require_fraction(rec.protected_frac, "protected fraction");
    require_fraction(rec.habitat_frac, "habitat fraction");
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidInput, "ecoregion " + rec.ecoregion_id + ": " + e.message());
  }
  for (const auto& [country, v] : rec.country_loss) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidInput, "ecoregion " + rec.ecoregion_id + ": loss of " +
                                               country + " must be non-negative");
    }
  }
}

double ecoregion_unit_sos(const EcoregionRecord& rec) {
  if (rec.country_loss.empty()) {
    throw Error(ErrorKind::IncompleteUnit,
                "ecoregion " + rec.ecoregion_id + " has no loss data to anchor its SOS");
  }
  Vector losses;
  for (const auto& [country, v] : rec.country_loss) losses.push_back(v);
  return (1.0 - ecoregion_reduction_target(rec.status())) * kernels::sum(losses);
}

std::string_view to_string(Band b) noexcept {
  switch (b) {
    case Band::Within: return "within";
    case Band::OverWithinUnit: return "over_within_unit";
    case Band::OverUnitExceeded: return "over_unit_exceeded";
  }
  return "?";
}

RelativeTransgression transgression_rel(double actual, double a_sos, double unit_total,
                                        double unit_limit) noexcept {
  RelativeTransgression out;
  if (actual == 0.0) return out;  // no footprint
  const double ratio = (actual - a_sos) / actual;
  out.ratio = ratio;
  if (ratio < 0.0) {
    out.band = Band::Within;
  } else if (ratio <= 1.0 && unit_total <= unit_limit) {
    out.band = Band::OverWithinUnit;
  } else {
    out.band = Band::OverUnitExceeded;
  }
  return out;
}

double allocate_local_sos(double lb, const AllocationShares& shares, std::string_view country) {
  return shares.share_of(country) * lb;
}

AllocationShares watershed_gf_shares(const WatershedRecord& rec,
                                     std::span<const std::string> entities) {
  return shares_from_map(rec.country_consumption, Approach::GF, "watershed " + rec.watershed_id,
                         "consumption", entities);
}

AllocationShares ecoregion_gf_shares(const EcoregionRecord& rec,
                                     std::span<const std::string> entities) {
  return shares_from_map(rec.country_loss, Approach::GF, "ecoregion " + rec.ecoregion_id, "loss",
                         entities);
}

namespace {

double lookup(const std::map<std::string, double>& m, std::string_view key) {
  const auto it = m.find(std::string(key));
  return it == m.end() ? 0.0 : it->second;
}

}  // namespace

LocalSosResult evaluate_watershed(const WatershedRecord& rec, const AllocationShares& shares,
                                  std::string_view country) {
  LocalSosResult r;
  r.unit_id = rec.watershed_id;
  r.country = country;
  r.approach = shares.approach;
  r.a_sos = allocate_local_sos(watershed_lb(rec), shares, country);
  r.actual = lookup(rec.country_consumption, country);
  r.abs_transgression = transgression_abs(r.actual, r.a_sos);
  r.rel = transgression_rel(r.actual, r.a_sos, rec.hwc, watershed_consumption_limit(rec));
  return r;
}

LocalSosResult evaluate_ecoregion(const EcoregionRecord& rec, const AllocationShares& shares,
                                  std::string_view country) {
  Vector losses;
  for (const auto& [c, v] : rec.country_loss) losses.push_back(v);
  const double total = kernels::sum(losses);
  const double unit_sos = ecoregion_unit_sos(rec);

  LocalSosResult r;
  r.unit_id = rec.ecoregion_id;
  r.country = country;
  r.approach = shares.approach;
  r.a_sos = allocate_local_sos(unit_sos, shares, country);
  r.actual = lookup(rec.country_loss, country);
  r.abs_transgression = transgression_abs(r.actual, r.a_sos);
  r.rel = transgression_rel(r.actual, r.a_sos, total, unit_sos);
  return r;
}

}  // namespace pballoc
