#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ecgkit {

// Minimal RFC-4180-style CSV: quoted fields, doubled quotes, CR/LF line
// ends. Rows keep their cell count as found; callers validate shape.
// Lines starting with '#' outside a quoted field are skipped (our own
// output files carry a hash comment on the first line).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);

std::string csv_escape(const std::string& field);

}  // namespace ecgkit
