#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pballoc {

enum class ErrorKind {
  Structural,
  Configuration,
  Parse,
  InvalidInput,
  InvalidPressure,
  Checksum,
  DegenerateInput,
  DegenerateEntity,
  NonProductiveEconomy,
  IncompleteUnit,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base error for everything the library throws on bad data or failed compute.
///
/// Kinds up to and including Checksum are validation failures (bad inputs or
/// configuration); the rest are compute failures on inputs that parsed fine.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix, for rewrapping with more context.
  const std::string& message() const noexcept { return message_; }
  bool is_validation() const noexcept;

 private:
  ErrorKind kind_;
  std::string message_;
};

/// Ingestion error with file/line/column context. Lines and columns are 1-based;
/// 0 means "not applicable" (e.g. a whole-file problem).
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::string file, std::size_t line, std::size_t column,
             const std::string& message);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pballoc
