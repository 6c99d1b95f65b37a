#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace bhc::detail {

/// Writes `text` to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);
/// Whole file, or nullopt when it does not exist.
std::optional<std::string> read_file(const std::filesystem::path& path);

/// Exact round-trip text for a double ("%a").
std::string hex_double(double v);
double parse_hex_double(const std::string& s);

} // namespace bhc::detail
