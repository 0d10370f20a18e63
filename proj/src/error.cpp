#include "pballoc/error.hpp"

namespace pballoc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural error";
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::InvalidPressure: return "invalid pressure";
    case ErrorKind::Checksum: return "checksum mismatch";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::DegenerateEntity: return "degenerate entity";
    case ErrorKind::NonProductiveEconomy: return "non-productive economy";
    case ErrorKind::IncompleteUnit: return "incomplete unit";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

bool Error::is_validation() const noexcept {
  switch (kind_) {
    case ErrorKind::Structural:
    case ErrorKind::Configuration:
    case ErrorKind::Parse:
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidPressure:
    case ErrorKind::Checksum:
      return true;
    default:
      return false;
  }
}

namespace {

std::string with_context(const std::string& file, std::size_t line, std::size_t column,
                         const std::string& message) {
  std::string out = file;
  if (line > 0) {
    out += ":" + std::to_string(line);
    if (column > 0) out += ":" + std::to_string(column);
  }
  return out + ": " + message;
}

}  // namespace

ParseError::ParseError(ErrorKind kind, std::string file, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(kind, with_context(file, line, column, message)),
      file_(std::move(file)),
      line_(line),
      column_(column) {}

}  // namespace pballoc
