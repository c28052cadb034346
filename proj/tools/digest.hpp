#pragma once

#include <filesystem>
#include <string>

namespace knotspread::cli {

/// Lower-case hex SHA-256 of a file's bytes. Throws Error(Parse) if unreadable.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace knotspread::cli
