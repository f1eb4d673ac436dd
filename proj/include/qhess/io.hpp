#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace qhess {

/// 17-significant-digit decimal text; round-trips 64-bit doubles exactly.
std::string format_double(double v);

/// Writes via a temporary file in the same directory and renames into
/// place, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace qhess
