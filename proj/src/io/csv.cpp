#include "vmspod/io/csv.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "vmspod/error.hpp"
#include "vmspod/io/archive.hpp"

namespace vmspod::io {

std::string format_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    require(row.size() == header.size(), ErrorKind::InvalidArgument,
            "format_csv: row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit([&out](const auto& v) { out << v; }, row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows) {
  write_bytes_atomic(path, format_csv(header, rows));
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::vector<std::string>> table;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    table.push_back(std::move(cells));
  }
  return table;
}

}  // namespace vmspod::io
