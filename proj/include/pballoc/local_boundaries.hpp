#pragma once

// Watershed and ecoregion safe operating spaces, their allocation to a country
// and the transgression measures evaluated against them.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "pballoc/allocation.hpp"

namespace pballoc {

/// Fraction of mean annual flow held back as a precaution on top of EWR.
inline constexpr double kWaterPrecaution = 0.15;

struct WatershedRecord {
  std::string watershed_id;
  double maf = 0.0;  ///< mean annual flow, Mm3/yr
  double hwc = 0.0;  ///< human water consumption, Mm3/yr
  double ewr = 0.0;  ///< environmental water requirement, Mm3/yr
  std::map<std::string, double> country_consumption;  ///< footprint sourced here, Mm3/yr
};

/// InvalidInput unless MAF, HWC, EWR and consumptions are finite and >= 0 and EWR <= MAF.
void validate(const WatershedRecord& rec);

/// MAF - (HWC + EWR + 0.15 MAF). Negative values mark water-scarce basins.
double watershed_lb(const WatershedRecord& rec) noexcept;

/// Volume the basin could sustain before exceeding its boundary: MAF - EWR - 0.15 MAF.
/// HWC <= this limit exactly when watershed_lb >= 0.
double watershed_consumption_limit(const WatershedRecord& rec) noexcept;

enum class EcoregionStatus { HalfProtected, CouldReachHalf, CouldRecover, Imperilled };

std::string_view to_string(EcoregionStatus s) noexcept;
EcoregionStatus parse_ecoregion_status(std::string_view text);

/// protected > 0.5: HalfProtected; protected + habitat > 0.5: CouldReachHalf;
/// protected + habitat > 0.2: CouldRecover; otherwise Imperilled.
EcoregionStatus classify_ecoregion(double protected_frac, double habitat_frac);

/// 0, 0.10, 0.30, 0.50 for the four statuses in declaration order.
double ecoregion_reduction_target(EcoregionStatus status) noexcept;

struct EcoregionRecord {
  std::string ecoregion_id;
  double protected_frac = 0.0;
  double habitat_frac = 0.0;
  std::optional<EcoregionStatus> declared_status;      ///< as found in the input, if any
  std::map<std::string, double> country_loss;          ///< pico PDF*yr

  EcoregionStatus status() const { return classify_ecoregion(protected_frac, habitat_frac); }
};

void validate(const EcoregionRecord& rec);

/// (1 - reduction target) x current total loss. IncompleteUnit when no loss data exist.
double ecoregion_unit_sos(const EcoregionRecord& rec);

enum class Band { Within, OverWithinUnit, OverUnitExceeded };

std::string_view to_string(Band b) noexcept;

struct RelativeTransgression {
  std::optional<double> ratio;  ///< empty when ACTUAL = 0 ("no footprint")
  Band band = Band::Within;

  bool no_footprint() const noexcept { return !ratio.has_value(); }
};

/// ACTUAL - A_SOS; positive means transgressed.
inline double transgression_abs(double actual, double a_sos) noexcept { return actual - a_sos; }

/// (ACTUAL - A_SOS) / ACTUAL with the band rule: ratio < 0 is within; 0 <= ratio <= 1
/// with unit_total <= unit_limit is over_within_unit; anything else is over_unit_exceeded.
RelativeTransgression transgression_rel(double actual, double a_sos, double unit_total,
                                        double unit_limit) noexcept;

/// s_country x lb. A negative lb allocates the exceedance by the same share.
double allocate_local_sos(double lb, const AllocationShares& shares, std::string_view country);

/// Shares of each country in the watershed's recorded consumption. When `entities`
/// is given, shares are laid out over that list (zero for countries without
/// consumption) so they can be blended with country-level shares.
AllocationShares watershed_gf_shares(const WatershedRecord& rec,
                                     std::span<const std::string> entities = {});
/// Shares of each country in the ecoregion's recorded loss, laid out as above.
AllocationShares ecoregion_gf_shares(const EcoregionRecord& rec,
                                     std::span<const std::string> entities = {});

struct LocalSosResult {
  std::string unit_id;
  std::string country;
  Approach approach = Approach::EPC;
  double a_sos = 0.0;
  double actual = 0.0;
  double abs_transgression = 0.0;
  RelativeTransgression rel;
};

/// Evaluates one country in one watershed. ACTUAL is the country's consumption there.
LocalSosResult evaluate_watershed(const WatershedRecord& rec, const AllocationShares& shares,
                                  std::string_view country);

/// Evaluates one country in one ecoregion. ACTUAL is the country's loss there.
LocalSosResult evaluate_ecoregion(const EcoregionRecord& rec, const AllocationShares& shares,
                                  std::string_view country);

}  // namespace pballoc
