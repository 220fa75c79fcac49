#pragma once

#include <filesystem>
#include <string_view>

namespace oslpp {

/// Writes to a sibling temp file and renames it over `path`, so readers never
/// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace oslpp
