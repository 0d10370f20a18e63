#include "pballoc/units.hpp"

#include <algorithm>
#include <array>

#include "pballoc/error.hpp"

namespace pballoc {

namespace {

struct Entry {
  std::string_view symbol;
  Dimension dimension;
  double to_base;
};

// Base units: t CO2, t CO2eq, m3, PDF*yr, currency unit, person.
constexpr std::array<Entry, 23> kRegistry{{
    {"t CO2", Dimension::Co2, 1.0},
    {"kt CO2", Dimension::Co2, 1e3},
    {"Mt CO2", Dimension::Co2, 1e6},
    {"Gt CO2", Dimension::Co2, 1e9},
    {"kg CO2", Dimension::Co2, 1e-3},
    {"t CO2eq", Dimension::Co2Eq, 1.0},
    {"kt CO2eq", Dimension::Co2Eq, 1e3},
    {"Mt CO2eq", Dimension::Co2Eq, 1e6},
    {"Gt CO2eq", Dimension::Co2Eq, 1e9},
    {"kg CO2eq", Dimension::Co2Eq, 1e-3},
    {"m3", Dimension::Water, 1.0},
    {"Mm3", Dimension::Water, 1e6},
    {"km3", Dimension::Water, 1e9},
    {"PDF*yr", Dimension::Biodiversity, 1.0},
    {"nano PDF*yr", Dimension::Biodiversity, 1e-9},
    {"pico PDF*yr", Dimension::Biodiversity, 1e-12},
    {"EUR", Dimension::Currency, 1.0},
    {"MEUR", Dimension::Currency, 1e6},
    {"USD", Dimension::Currency, 1.0},
    {"MUSD", Dimension::Currency, 1e6},
    {"persons", Dimension::Persons, 1.0},
    {"thousand persons", Dimension::Persons, 1e3},
    {"million persons", Dimension::Persons, 1e6},
}};

std::string normalize(std::string_view text) {
  std::string s(text);
  auto replace_all = [&s](std::string_view from, std::string_view to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
      s.replace(pos, from.size(), to);
  };
  replace_all("³", "3");      // superscript three
  replace_all("₂", "2");      // subscript two
  replace_all("·", "*");      // middle dot
  replace_all("CO2e ", "CO2eq ");
  replace_all("PDFyr", "PDF*yr");
  replace_all("PDF yr", "PDF*yr");
  if (s.size() >= 4 && s.compare(s.size() - 4, 4, "CO2e") == 0) s += "q";
  const auto first = s.find_first_not_of(' ');
  const auto last = s.find_last_not_of(' ');
  return first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
}

const Entry* find(std::string_view text) {
  const std::string key = normalize(text);
  for (const auto& e : kRegistry) {
    if (e.symbol == key) return &e;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(Dimension d) noexcept {
  switch (d) {
    case Dimension::Co2: return "CO2";
    case Dimension::Co2Eq: return "CO2eq";
    case Dimension::Water: return "water volume";
    case Dimension::Biodiversity: return "PDF*yr";
    case Dimension::Currency: return "currency";
    case Dimension::Persons: return "persons";
  }
  return "?";
}

Unit parse_unit(std::string_view text) {
  const Entry* e = find(text);
  if (!e) throw Error(ErrorKind::Configuration, "unknown unit '" + std::string(text) + "'");
  return Unit{std::string(e->symbol), e->dimension, e->to_base};
}

bool is_known_unit(std::string_view text) noexcept { return find(text) != nullptr; }

double convert(double value, const Unit& from, const Unit& to) {
  if (from.dimension != to.dimension) {
    throw Error(ErrorKind::Configuration, "cannot convert " + from.symbol + " (" +
                                              std::string(to_string(from.dimension)) + ") to " +
                                              to.symbol + " (" +
                                              std::string(to_string(to.dimension)) + ")");
  }
  if (from.to_base == to.to_base) return value;
  return value * (from.to_base / to.to_base);
}

std::string per_capita_symbol(const Unit& unit) { return unit.symbol + "/capita"; }

std::vector<std::string> registered_units() {
  std::vector<std::string> out;
  for (const auto& e : kRegistry) out.emplace_back(e.symbol);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pballoc
