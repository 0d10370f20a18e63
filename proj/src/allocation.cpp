#include "pballoc/allocation.hpp"

#include <cmath>
#include <set>

#include "pballoc/error.hpp"
#include "pballoc/kernels.hpp"
#include "pballoc/units.hpp"

namespace pballoc {

namespace {

std::vector<std::string> ids(std::span<const EntityStats> stats) {
  std::vector<std::string> out;
  out.reserve(stats.size());
  for (const auto& s : stats) out.push_back(s.entity_id);
  return out;
}

// Normalizes raw weights with a compensated denominator.
AllocationShares normalize(Approach approach, std::span<const EntityStats> stats, Vector raw,
                           std::string_view what) {
  if (stats.empty()) throw Error(ErrorKind::DegenerateInput, "no entities to allocate to");
  const double total = kernels::sum(raw);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorKind::DegenerateInput,
                "total " + std::string(what) + " over " + std::to_string(stats.size()) +
                    " entities is not positive");
  }
  AllocationShares out;
  out.approach = approach;
  out.entities = ids(stats);
  out.shares = std::move(raw);
  kernels::scale(1.0 / total, out.shares);
  return out;
}

void require_non_negative(double v, const EntityStats& s, std::string_view field, ErrorKind kind) {
  if (!std::isfinite(v) || v < 0.0) {
    throw Error(kind, "entity " + s.entity_id + " has invalid " + std::string(field) + " " +
                          std::to_string(v));
  }
}

}  // namespace

std::string_view to_string(Approach a) noexcept {
  switch (a) {
    case Approach::EPC: return "epc";
    case Approach::GF: return "gf";
    case Approach::AP: return "ap";
    case Approach::VA: return "va";
    case Approach::BA: return "ba";
  }
  return "?";
}

Approach parse_approach(std::string_view text) {
  if (text == "epc" || text == "EPC") return Approach::EPC;
  if (text == "gf" || text == "GF") return Approach::GF;
  if (text == "ap" || text == "AP") return Approach::AP;
  if (text == "va" || text == "VA") return Approach::VA;
  if (text == "ba" || text == "BA") return Approach::BA;
  throw Error(ErrorKind::Configuration, "unknown allocation approach '" + std::string(text) + "'");
}

std::optional<std::size_t> AllocationShares::find(std::string_view entity) const {
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (entities[i] == entity) return i;
  }
  return std::nullopt;
}

double AllocationShares::share_of(std::string_view entity) const {
  if (auto i = find(entity)) return shares[*i];
  throw Error(ErrorKind::Structural, "entity '" + std::string(entity) + "' has no " +
                                         std::string(to_string(approach)) + " share");
}

void validate(const AllocationShares& s) {
  if (s.entities.size() != s.shares.size()) {
    throw Error(ErrorKind::Structural, "share vector and entity list differ in length");
  }
  for (double v : s.shares) {
    if (!(v >= 0.0)) throw Error(ErrorKind::Structural, "negative or NaN share");
  }
  const double total = kernels::sum(s.shares);
  if (std::fabs(total - 1.0) > kShareSumTolerance) {
    throw Error(ErrorKind::Structural, "shares sum to " + std::to_string(total) + ", not 1");
  }
}

AllocationShares epc_shares(std::span<const EntityStats> stats) {
  Vector raw;
  raw.reserve(stats.size());
  for (const auto& s : stats) {
    require_non_negative(s.population, s, "population", ErrorKind::InvalidInput);
    raw.push_back(s.population);
  }
  return normalize(Approach::EPC, stats, std::move(raw), "population");
}

AllocationShares gf_shares(std::span<const EntityStats> stats, std::string_view pressure_field) {
  Vector raw;
  raw.reserve(stats.size());
  for (const auto& s : stats) {
    const auto it = s.pressures.find(std::string(pressure_field));
    if (it == s.pressures.end()) {
      throw Error(ErrorKind::Structural, "entity " + s.entity_id + " has no pressure field '" +
                                             std::string(pressure_field) + "'");
    }
    require_non_negative(it->second, s, pressure_field, ErrorKind::InvalidPressure);
    raw.push_back(it->second);
  }
  auto out = normalize(Approach::GF, stats, std::move(raw), pressure_field);
  out.pressure_field = pressure_field;
  return out;
}

AllocationShares ap_shares(std::span<const EntityStats> stats, double alpha, MissingApData policy) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Configuration, "AP exponent must be finite");
  Vector raw;
  raw.reserve(stats.size());
  for (const auto& s : stats) {
    const bool has_data = std::isfinite(s.employment) && std::isfinite(s.value_added) &&
                          s.employment > 0.0 && s.value_added > 0.0;
    if (!has_data) {
      if (s.employment < 0.0 || s.value_added < 0.0) {
        throw Error(ErrorKind::InvalidInput, "entity " + s.entity_id +
                                                 " has negative employment or value added");
      }
      if (policy == MissingApData::Error) {
        throw Error(ErrorKind::DegenerateEntity,
                    "entity " + s.entity_id + " lacks positive employment (" +
                        std::to_string(s.employment) + ") and value added (" +
                        std::to_string(s.value_added) + ") for ability-to-pay shares");
      }
      raw.push_back(0.0);
      continue;
    }
    raw.push_back(s.employment * std::pow(s.value_added / s.employment, -alpha));
  }
  auto out = normalize(Approach::AP, stats, std::move(raw), "ability-to-pay weight");
  out.alpha = alpha;
  return out;
}

AllocationShares va_shares(std::span<const EntityStats> stats) {
  Vector raw;
  raw.reserve(stats.size());
  for (const auto& s : stats) {
    require_non_negative(s.value_added, s, "value added", ErrorKind::InvalidInput);
    raw.push_back(s.value_added);
  }
  return normalize(Approach::VA, stats, std::move(raw), "value added");
}

AllocationShares blended_shares(std::span<const std::pair<AllocationShares, double>> components) {
  if (components.empty()) throw Error(ErrorKind::Configuration, "blend has no components");
  Vector weights;
  for (const auto& [shares, w] : components) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::Configuration, "blend weights must be non-negative");
    }
    weights.push_back(w);
  }
  if (std::fabs(kernels::sum(weights) - 1.0) > kShareSumTolerance) {
    throw Error(ErrorKind::Configuration, "blend weights must sum to 1");
  }
  const auto& first = components.front().first;
  AllocationShares out;
  out.approach = Approach::BA;
  out.entities = first.entities;
  out.shares.assign(first.shares.size(), 0.0);
  for (const auto& [shares, w] : components) {
    if (shares.entities != first.entities) {
      throw Error(ErrorKind::Structural, "blend components cover different entities");
    }
    if (w != 0.0) kernels::axpy(w, shares.shares, out.shares);
    out.blend.emplace_back(shares.approach, w);
    if (shares.approach == Approach::AP) out.alpha = shares.alpha;
    if (shares.approach == Approach::GF) out.pressure_field = shares.pressure_field;
  }
  return out;
}

AllocationShares blended_shares(const AllocationShares& epc, const AllocationShares& gf,
                                const AllocationShares& ap, const BlendWeights& weights) {
  const std::pair<AllocationShares, double> parts[] = {
      {epc, weights.epc}, {gf, weights.gf}, {ap, weights.ap}};
  return blended_shares(parts);
}

std::vector<AllocatedBudget> allocate_budget(const AllocationShares& shares,
                                             const BudgetSpec& boundary,
                                             std::span<const double> population) {
  if (!is_known_unit(boundary.unit)) {
    throw Error(ErrorKind::Configuration, "boundary " + std::string(to_string(boundary.boundary)) +
                                              " has unresolved unit '" + boundary.unit + "'");
  }
  if (!std::isfinite(boundary.global_annual)) {
    throw Error(ErrorKind::Configuration, "boundary value is not finite");
  }
  if (!population.empty() && population.size() != shares.shares.size()) {
    throw Error(ErrorKind::Structural, "population and shares differ in length");
  }
  std::vector<AllocatedBudget> out;
  out.reserve(shares.shares.size());
  for (std::size_t i = 0; i < shares.shares.size(); ++i) {
    AllocatedBudget b;
    b.entity_id = shares.entities[i];
    b.budget = shares.shares[i] * boundary.global_annual;
    if (!population.empty() && population[i] > 0.0) b.per_capita = b.budget / population[i];
    b.approach = shares.approach;
    b.boundary = boundary.boundary;
    b.unit = boundary.unit;
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<SubEntityBudget> two_stage_allocate(
    const AllocationShares& parent_shares,
    const std::map<std::string, AllocationShares>& within, const BudgetSpec& boundary) {
  const auto parents = allocate_budget(parent_shares, boundary);
  std::set<std::string> seen;
  std::vector<SubEntityBudget> out;
  for (const auto& [parent, sub] : within) {
    const auto idx = parent_shares.find(parent);
    if (!idx) {
      throw Error(ErrorKind::Structural, "sub-entities listed under unknown parent '" + parent + "'");
    }
    try {
      validate(sub);
    } catch (const Error& e) {
      throw Error(ErrorKind::Structural, "within-" + parent + " shares: " + e.message());
    }
    const double parent_budget = parents[*idx].budget;
    const double parent_share = parent_shares.shares[*idx];
    for (std::size_t k = 0; k < sub.entities.size(); ++k) {
      if (!seen.insert(sub.entities[k]).second) {
        throw Error(ErrorKind::Structural,
                    "sub-entity '" + sub.entities[k] + "' appears under more than one parent");
      }
      out.push_back(SubEntityBudget{parent, sub.entities[k], parent_budget * sub.shares[k],
                                    parent_share * sub.shares[k]});
    }
  }
  return out;
}

}  // namespace pballoc
