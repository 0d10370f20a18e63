#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace pballoc::io {

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// "sha256:<hex>" of a file's contents.
std::string file_checksum(const std::filesystem::path& path);

/// Reads a whole file; Structural error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace pballoc::io
