#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace vmspod::io {

using CsvCell = std::variant<double, long long, std::string>;
using CsvRow = std::vector<CsvCell>;

/// Header plus rows; floating-point cells carry 17 significant digits so they re-parse exactly.
std::string format_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows);

/// Minimal reader for files written by write_csv: header row, then comma-separated cells.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace vmspod::io
