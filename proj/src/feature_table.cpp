#include "feature_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "csv.hpp"
#include "errors.hpp"

namespace ecgkit {

const char* feature_set_name(FeatureSet s) {
  switch (s) {
    case FeatureSet::baseline: return "baseline";
    case FeatureSet::complexity: return "+complexity";
    case FeatureSet::cross: return "+cross";
    case FeatureSet::meta: return "+meta";
  }
  return "?";
}

std::optional<FeatureSet> feature_set_from_name(std::string name) {
  if (!name.empty() && name[0] == '+') name = name.substr(1);
  if (name == "baseline") return FeatureSet::baseline;
  if (name == "complexity") return FeatureSet::complexity;
  if (name == "cross") return FeatureSet::cross;
  if (name == "meta" || name == "all") return FeatureSet::meta;
  return std::nullopt;
}

std::vector<std::string> feature_columns(FeatureSet s) {
  std::vector<std::string> cols = {
      "amp_mean", "amp_median", "amp_std",  "rr_mean",        "rr_median",
      "rr_std",   "f1",         "f2",       "p_f1",           "p_f2",
      "p_ratio_f1_2f1"};
  if (s == FeatureSet::baseline) return cols;
  const char* complexity[] = {"hd", "apen", "permen", "mse",   "lzc",  "det",
                              "lam", "dbyl", "tt",     "d_ent", "v_ent"};
  cols.insert(cols.end(), std::begin(complexity), std::end(complexity));
  if (s == FeatureSet::complexity) return cols;
  const char* cross[] = {"rho_ii_avl", "rho_ii_v2", "rho_v2_avl",
                         "mi_ii_avl",  "mi_ii_v2",  "mi_v2_avl"};
  cols.insert(cols.end(), std::begin(cross), std::end(cross));
  if (s == FeatureSet::cross) return cols;
  const char* meta[] = {"age", "sex", "weight"};
  cols.insert(cols.end(), std::begin(meta), std::end(meta));
  return cols;
}

int FeatureTable::column(const std::string& name) const {
  for (size_t i = 0; i < feature_names.size(); ++i)
    if (feature_names[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> FeatureTable::column_values(int col) const {
  std::vector<double> out;
  if (col < 0) return out;
  for (const auto& row : rows) {
    const double v = row.values[static_cast<size_t>(col)];
    if (!is_missing(v)) out.push_back(v);
  }
  return out;
}

namespace {

std::string format_value(double v) {
  if (is_missing(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_feature_csv(const FeatureTable& table,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(table.config_hash));
  out << "# config_hash=" << hash << "\n";
  out << "record_id";
  for (const auto& name : table.feature_names) out << ',' << name;
  out << ",binary_label,superclass,strat_fold\n";
  for (const auto& row : table.rows) {
    out << csv_escape(row.record_id);
    for (double v : row.values) out << ',' << format_value(v);
    out << ',';
    if (row.binary_label)
      out << (*row.binary_label == BinaryLabel::healthy ? "healthy" : "diseased");
    out << ',';
    if (row.superclass_label) out << superclass_name(*row.superclass_label);
    out << ',' << row.strat_fold << '\n';
  }
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  // Recover the hash comment before the CSV reader strips it.
  {
    std::ifstream probe(path);
    if (!probe) fail(ErrorKind::io, "cannot open " + path.string());
  }
  const CsvTable csv = read_csv(path);

  FeatureTable table;
  {
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    const std::string tag = "# config_hash=";
    if (first.rfind(tag, 0) == 0)
      table.config_hash = std::stoull(first.substr(tag.size()), nullptr, 16);
  }

  if (csv.header.size() < 4 || csv.header.front() != "record_id")
    fail(ErrorKind::data, path.string() + ": not a feature table");
  const size_t ncols = csv.header.size();
  if (csv.header[ncols - 3] != "binary_label" ||
      csv.header[ncols - 2] != "superclass" || csv.header[ncols - 1] != "strat_fold")
    fail(ErrorKind::data, path.string() + ": missing label columns");
  table.feature_names.assign(csv.header.begin() + 1, csv.header.end() - 3);

  for (const auto& row : csv.rows) {
    if (row.size() != ncols)
      fail(ErrorKind::data, path.string() + ": ragged row for record " +
                                (row.empty() ? "?" : row[0]));
    FeatureRow r;
    r.record_id = row[0];
    r.values.reserve(table.feature_names.size());
    for (size_t i = 1; i < ncols - 3; ++i) {
      const std::string& cell = row[i];
      if (cell.empty()) {
        r.values.push_back(missing_value());
      } else {
        try {
          r.values.push_back(std::stod(cell));
        } catch (const std::exception&) {
          fail(ErrorKind::data,
               path.string() + ": bad numeric cell for record " + r.record_id);
        }
      }
    }
    const std::string& bin = row[ncols - 3];
    if (bin == "healthy") r.binary_label = BinaryLabel::healthy;
    else if (bin == "diseased") r.binary_label = BinaryLabel::diseased;
    if (!row[ncols - 2].empty())
      r.superclass_label = superclass_from_name(row[ncols - 2]);
    if (!row[ncols - 1].empty()) r.strat_fold = std::atoi(row[ncols - 1].c_str());
    table.rows.push_back(std::move(r));
  }
  return table;
}

void write_metadata_file(const FeatureTable& table,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(table.config_hash));
  out << "config_hash=" << hash << '\n';
  for (const auto& [key, value] : table.provenance)
    out << key << '=' << value << '\n';
}

bool record_id_less(const std::string& a, const std::string& b) {
  auto strip = [](const std::string& s) {
    const size_t p = s.find_first_not_of('0');
    return p == std::string::npos ? std::string("0") : s.substr(p);
  };
  const bool a_num = !a.empty() && a.find_first_not_of("0123456789") == std::string::npos;
  const bool b_num = !b.empty() && b.find_first_not_of("0123456789") == std::string::npos;
  if (a_num && b_num) {
    const std::string as = strip(a), bs = strip(b);
    if (as.size() != bs.size()) return as.size() < bs.size();
    if (as != bs) return as < bs;
    return a < b;
  }
  if (a_num != b_num) return a_num;
  return a < b;
}

}  // namespace ecgkit
