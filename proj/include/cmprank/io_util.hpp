#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cmprank {

/// Writes via a sibling temp file and renames into place, so readers never
/// observe a partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Shortest exact decimal form of v; negative zero prints as "0".
std::string format_double(double v);

/// Six significant digits, the run-file convention.
std::string format_score(double v);

}  // namespace cmprank
