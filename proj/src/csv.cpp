#include "csv.hpp"

#include <fstream>

#include "errors.hpp"

namespace ecgkit {

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  CsvTable table;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool row_started = false;
  bool header_done = false;

  auto end_cell = [&]() {
    row.push_back(cell);
    cell.clear();
  };
  auto end_row = [&]() {
    if (!row_started) return;
    end_cell();
    if (row.size() == 1 && !row[0].empty() && row[0][0] == '#') {
      // comment line
    } else if (!header_done) {
      table.header = row;
      header_done = true;
    } else {
      table.rows.push_back(row);
    }
    row.clear();
    row_started = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        row_started = true;
        end_cell();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        cell.push_back(c);
        row_started = true;
        break;
    }
  }
  end_row();

  if (in_quotes) fail(ErrorKind::data, path.string() + ": unterminated quote");
  if (!header_done) fail(ErrorKind::data, path.string() + ": no header row");
  return table;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace ecgkit
