#pragma once

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF. Blank lines and
// lines starting with '#' are skipped.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pballoc::io {

struct CsvRow {
  std::size_t line = 0;  ///< 1-based source line
  std::vector<std::string> cells;
};

struct CsvDocument {
  std::string file;
  std::vector<CsvRow> rows;

  /// Parses cell `col` (0-based) of `row` as a finite double; ParseError otherwise.
  double number(const CsvRow& row, std::size_t col) const;
  /// Throws ParseError unless the row has exactly `n` cells.
  void require_width(const CsvRow& row, std::size_t n) const;
  /// Maps header names to column indices; missing required names are a ParseError.
  std::vector<std::size_t> columns(const std::vector<std::string>& required) const;
};

CsvDocument parse_csv(std::string_view text, std::string file_label);
CsvDocument read_csv(const std::filesystem::path& path);

/// Parses a finite double; throws ParseError with the given location.
double parse_double(std::string_view cell, const std::string& file, std::size_t line,
                    std::size_t column);

/// Quotes a field if it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace pballoc::io
