#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace simscore {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// printf-style rendering of a double with a fixed number of significant
/// digits; used everywhere a number is written so output bytes are stable.
std::string format_number(double value, int digits = 10);

}  // namespace simscore
