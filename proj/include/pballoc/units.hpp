#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pballoc {

/// Physical quantity a unit measures. Conversions never cross dimensions.
enum class Dimension { Co2, Co2Eq, Water, Biodiversity, Currency, Persons };

struct Unit {
  std::string symbol;   ///< canonical spelling, e.g. "kt CO2"
  Dimension dimension;
  double to_base;       ///< multiply by this to reach the dimension's base unit

  bool operator==(const Unit& other) const {
    return symbol == other.symbol && dimension == other.dimension;
  }
};

std::string_view to_string(Dimension d) noexcept;

/// Looks up a unit string in the registry. Accepts ASCII and superscript/subscript
/// spellings ("km3", "km³", "t CO2", "t CO₂"). Throws Configuration when unknown.
Unit parse_unit(std::string_view text);

bool is_known_unit(std::string_view text) noexcept;

/// Explicit conversion between units of the same dimension.
double convert(double value, const Unit& from, const Unit& to);

/// Symbol of the per-capita unit, e.g. "t CO2/capita".
std::string per_capita_symbol(const Unit& unit);

/// All canonical symbols in the registry, sorted.
std::vector<std::string> registered_units();

}  // namespace pballoc
