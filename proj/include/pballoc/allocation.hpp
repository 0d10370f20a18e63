#pragma once

// Effort-sharing rules that turn a global budget into entity shares, and the
// two-stage country -> sector/city split.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pballoc/budgets.hpp"
#include "pballoc/linalg.hpp"

namespace pballoc {

enum class Approach { EPC, GF, AP, VA, BA };

std::string_view to_string(Approach a) noexcept;
Approach parse_approach(std::string_view text);

/// Inputs for one entity (country, sector, city).
struct EntityStats {
  std::string entity_id;
  double population = 0.0;
  double value_added = 0.0;
  double employment = 0.0;
  /// Named pressure fields, e.g. "co2/cba" -> 82.3e6.
  std::map<std::string, double> pressures;
};

struct BlendWeights {
  double epc = 1.0 / 3.0;
  double gf = 1.0 / 3.0;
  double ap = 1.0 / 3.0;
};

inline constexpr double kShareSumTolerance = 1e-12;
inline constexpr double kDefaultApAlpha = 0.5;

struct AllocationShares {
  Approach approach = Approach::EPC;
  std::vector<std::string> entities;
  Vector shares;
  /// BA only: the mixture that produced the shares.
  std::vector<std::pair<Approach, double>> blend;
  double alpha = kDefaultApAlpha;   ///< AP only
  std::string pressure_field;       ///< GF only

  double share_of(std::string_view entity) const;  ///< Structural error if absent
  std::optional<std::size_t> find(std::string_view entity) const;
};

/// Throws Structural unless shares are non-negative and sum to 1 within kShareSumTolerance.
void validate(const AllocationShares& shares);

enum class MissingApData { Error, Redistribute };

AllocationShares epc_shares(std::span<const EntityStats> stats);
AllocationShares gf_shares(std::span<const EntityStats> stats, std::string_view pressure_field);
/// Shares proportional to emp * (va / emp)^(-alpha). Entities with missing or
/// non-positive VA or employment are a DegenerateEntity error unless the policy
/// is Redistribute, in which case they receive share 0.
AllocationShares ap_shares(std::span<const EntityStats> stats, double alpha = kDefaultApAlpha,
                           MissingApData policy = MissingApData::Error);
AllocationShares va_shares(std::span<const EntityStats> stats);

/// Convex combination of share vectors over the same entities in the same order.
AllocationShares blended_shares(std::span<const std::pair<AllocationShares, double>> components);

/// Equal-or-weighted blend of EPC, GF and AP.
AllocationShares blended_shares(const AllocationShares& epc, const AllocationShares& gf,
                                const AllocationShares& ap, const BlendWeights& weights = {});

struct AllocatedBudget {
  std::string entity_id;
  double budget = 0.0;                ///< in the boundary's unit
  std::optional<double> per_capita;   ///< in the boundary's unit per person
  Approach approach = Approach::EPC;
  Boundary boundary = Boundary::ClimateCo2;
  std::string unit;
};

/// pb_i = s_i * PB. When `population` is given (same order as the shares),
/// per-capita budgets are filled in for entities with population > 0.
std::vector<AllocatedBudget> allocate_budget(const AllocationShares& shares,
                                             const BudgetSpec& boundary,
                                             std::span<const double> population = {});

struct SubEntityBudget {
  std::string parent;
  std::string entity_id;
  double budget = 0.0;
  double global_share = 0.0;  ///< parent share x within-parent share
};

/// Splits each parent's budget by its within-parent shares. Parents without an
/// entry in `within` are not subdivided. Throws Structural when a parent is
/// unknown, a within-parent vector does not sum to 1, or a sub-entity appears
/// under two parents.
std::vector<SubEntityBudget> two_stage_allocate(
    const AllocationShares& parent_shares,
    const std::map<std::string, AllocationShares>& within, const BudgetSpec& boundary);

}  // namespace pballoc
