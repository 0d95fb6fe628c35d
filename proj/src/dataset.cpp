#include "dataset.hpp"

#include <algorithm>
#include <cmath>

#include "csv.hpp"
#include "errors.hpp"

namespace ecgkit {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_optional_double(const std::string& cell) {
  const std::string t = trim(cell);
  if (t.empty() || t == "nan" || t == "NaN" || t == "NA") return std::nullopt;
  try {
    const double v = std::stod(t);
    if (std::isnan(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

bool parse_scp_codes(const std::string& text, std::map<std::string, double>* out) {
  out->clear();
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') return false;
  t = t.substr(1, t.size() - 2);
  if (trim(t).empty()) return true;  // empty dict

  size_t pos = 0;
  while (pos < t.size()) {
    size_t comma = t.find(',', pos);
    if (comma == std::string::npos) comma = t.size();
    const std::string entry = trim(t.substr(pos, comma - pos));
    pos = comma + 1;
    if (entry.empty()) continue;
    const size_t colon = entry.find(':');
    if (colon == std::string::npos) return false;
    std::string key = trim(entry.substr(0, colon));
    const std::string value = trim(entry.substr(colon + 1));
    if (key.size() >= 2 && (key.front() == '\'' || key.front() == '"') &&
        key.back() == key.front()) {
      key = key.substr(1, key.size() - 2);
    }
    if (key.empty()) return false;
    try {
      (*out)[key] = std::stod(value);
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

DatasetIndex load_index(const std::filesystem::path& metadata_csv,
                        const std::filesystem::path& statements_csv) {
  DatasetIndex index;

  // Statement dictionary: first column is the scp code; diagnostic rows
  // (diagnostic == 1) carry the superclass in diagnostic_class.
  {
    const CsvTable t = read_csv(statements_csv);
    const int diag = t.column("diagnostic");
    const int diag_class = t.column("diagnostic_class");
    if (diag < 0 || diag_class < 0)
      fail(ErrorKind::data, statements_csv.string() +
                                ": missing diagnostic/diagnostic_class columns");
    for (const auto& row : t.rows) {
      if (row.empty()) continue;
      const std::string code = row[0];
      if (static_cast<size_t>(diag) >= row.size() ||
          static_cast<size_t>(diag_class) >= row.size())
        continue;
      const std::optional<double> flag = parse_optional_double(row[diag]);
      if (!flag || *flag != 1.0) continue;
      const auto cls = superclass_from_name(trim(row[diag_class]));
      if (cls) index.scp_map[code] = *cls;
    }
  }
  if (index.scp_map.empty())
    fail(ErrorKind::data,
         statements_csv.string() + ": no diagnostic statements found");

  const CsvTable t = read_csv(metadata_csv);
  const int c_scp = t.column("scp_codes");
  const int c_age = t.column("age");
  const int c_sex = t.column("sex");
  const int c_weight = t.column("weight");
  const int c_fold = t.column("strat_fold");
  int c_file = t.column("filename_lr");
  if (c_file < 0) c_file = t.column("filename");
  int c_id = t.column("ecg_id");
  if (c_id < 0) c_id = t.column("record_id");
  if (c_id < 0 && !t.header.empty() && t.header[0].empty())
    c_id = 0;  // unnamed index column

  for (const char* req : {"scp_codes", "age", "sex", "weight", "strat_fold"})
    if (t.column(req) < 0)
      fail(ErrorKind::data,
           metadata_csv.string() + ": missing required column " + req);
  if (c_file < 0)
    fail(ErrorKind::data,
         metadata_csv.string() + ": missing filename_lr/filename column");
  if (c_id < 0)
    fail(ErrorKind::data, metadata_csv.string() + ": missing ecg_id column");

  std::set<std::string> seen_ids;
  for (const auto& row : t.rows) {
    const size_t need = static_cast<size_t>(
        std::max({c_scp, c_age, c_sex, c_weight, c_fold, c_file, c_id}));
    if (row.size() <= need) {
      ++index.skipped_rows;
      continue;
    }
    IndexRow r;
    r.record_id = trim(row[c_id]);
    r.signal_path = trim(row[c_file]);
    if (r.record_id.empty() || r.signal_path.empty()) {
      ++index.skipped_rows;
      continue;
    }
    if (!seen_ids.insert(r.record_id).second)
      fail(ErrorKind::data,
           metadata_csv.string() + ": duplicate record id " + r.record_id);
    if (!parse_scp_codes(row[c_scp], &r.scp_codes)) {
      ++index.skipped_rows;
      continue;
    }
    r.age = parse_optional_double(row[c_age]);
    // PTB-XL encodes sex as 0 = male, 1 = female.
    if (const auto sex_v = parse_optional_double(row[c_sex])) {
      if (*sex_v == 0.0) r.sex = Sex::male;
      else if (*sex_v == 1.0) r.sex = Sex::female;
    } else {
      const std::string s = trim(row[c_sex]);
      if (s == "male" || s == "M") r.sex = Sex::male;
      else if (s == "female" || s == "F") r.sex = Sex::female;
    }
    r.weight = parse_optional_double(row[c_weight]);
    if (const auto fold = parse_optional_double(row[c_fold]))
      r.strat_fold = static_cast<int>(*fold);
    index.rows.push_back(std::move(r));
  }
  return index;
}

LabelAssignment assign_labels(const std::map<std::string, double>& scp_codes,
                              const std::map<std::string, Superclass>& scp_map) {
  if (scp_map.empty()) fail(ErrorKind::argument, "assign_labels: empty scp map");
  LabelAssignment out;
  for (const auto& [code, confidence] : scp_codes) {
    (void)confidence;  // any listed code counts
    const auto it = scp_map.find(code);
    if (it != scp_map.end()) out.superclasses.insert(it->second);
  }
  if (out.superclasses.empty()) return out;  // unlabeled
  const bool diseased =
      std::any_of(out.superclasses.begin(), out.superclasses.end(),
                  [](Superclass c) { return c != Superclass::NORM; });
  out.binary_label = diseased ? BinaryLabel::diseased : BinaryLabel::healthy;
  return out;
}

std::optional<Superclass> primary_superclass(const std::set<Superclass>& s) {
  for (Superclass c : {Superclass::MI, Superclass::STTC, Superclass::CD,
                       Superclass::HYP, Superclass::NORM})
    if (s.count(c)) return c;
  return std::nullopt;
}

}  // namespace ecgkit
