#include "pballoc/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pballoc/error.hpp"

namespace pballoc::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

CsvDocument parse_csv(std::string_view text, std::string file_label) {
  CsvDocument doc;
  doc.file = std::move(file_label);
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::size_t pos = 0;
  std::size_t line = 1;
  while (pos < text.size()) {
    CsvRow row;
    row.line = line;
    std::string cell;
    bool quoted = false;
    bool was_quoted = false;
    bool end_of_row = false;
    std::size_t col_start_line = line;
    while (!end_of_row) {
      if (pos >= text.size()) {
        if (quoted) {
          throw ParseError(ErrorKind::Parse, doc.file, col_start_line, row.cells.size() + 1,
                           "unterminated quoted field");
        }
        end_of_row = true;
        break;
      }
      const char c = text[pos++];
      if (quoted) {
        if (c == '"') {
          if (pos < text.size() && text[pos] == '"') {
            cell.push_back('"');
            ++pos;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          cell.push_back(c);
        }
        continue;
      }
      switch (c) {
        case '"':
          if (!trim(cell).empty()) {
            throw ParseError(ErrorKind::Parse, doc.file, line, row.cells.size() + 1,
                             "quote inside unquoted field");
          }
          cell.clear();
          quoted = was_quoted = true;
          break;
        case ',':
          row.cells.push_back(was_quoted ? cell : std::string(trim(cell)));
          cell.clear();
          was_quoted = false;
          break;
        case '\r':
          break;
        case '\n':
          ++line;
          end_of_row = true;
          break;
        default:
          if (was_quoted && c != ' ' && c != '\t') {
            throw ParseError(ErrorKind::Parse, doc.file, line, row.cells.size() + 1,
                             "text after closing quote");
          }
          if (!was_quoted) cell.push_back(c);
      }
    }
    row.cells.push_back(was_quoted ? cell : std::string(trim(cell)));
    const bool blank = row.cells.size() == 1 && row.cells[0].empty() && !was_quoted;
    const bool comment = !row.cells[0].empty() && row.cells[0][0] == '#' && !was_quoted;
    if (!blank && !comment) doc.rows.push_back(std::move(row));
  }
  return doc;
}

CsvDocument read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ErrorKind::Structural, path.string(), 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

double parse_double(std::string_view cell, const std::string& file, std::size_t line,
                    std::size_t column) {
  std::string_view s = trim(cell);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(ErrorKind::Parse, file, line, column,
                     "expected a number, got '" + std::string(cell) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(ErrorKind::Parse, file, line, column,
                     "non-finite value '" + std::string(cell) + "'");
  }
  return v;
}

double CsvDocument::number(const CsvRow& row, std::size_t col) const {
  if (col >= row.cells.size()) {
    throw ParseError(ErrorKind::Parse, file, row.line, col + 1, "missing cell");
  }
  return parse_double(row.cells[col], file, row.line, col + 1);
}

void CsvDocument::require_width(const CsvRow& row, std::size_t n) const {
  if (row.cells.size() != n) {
    throw ParseError(ErrorKind::Structural, file, row.line, std::min(row.cells.size(), n) + 1,
                     "expected " + std::to_string(n) + " cells, found " +
                         std::to_string(row.cells.size()));
  }
}

std::vector<std::size_t> CsvDocument::columns(const std::vector<std::string>& required) const {
  if (rows.empty()) throw ParseError(ErrorKind::Structural, file, 0, 0, "file has no header");
  const auto& header = rows.front();
  std::vector<std::size_t> out;
  for (const auto& name : required) {
    std::size_t found = header.cells.size();
    for (std::size_t c = 0; c < header.cells.size(); ++c) {
      if (header.cells[c] == name) found = c;
    }
    if (found == header.cells.size()) {
      throw ParseError(ErrorKind::Structural, file, header.line, 0,
                       "header lacks column '" + name + "'");
    }
    out.push_back(found);
  }
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace pballoc::io
