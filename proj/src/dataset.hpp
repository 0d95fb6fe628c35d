#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "signal.hpp"

namespace ecgkit {

// One metadata row of a PTB-XL-style index.
struct IndexRow {
  std::string record_id;
  std::string signal_path;  // relative, without extension
  std::map<std::string, double> scp_codes;
  std::optional<double> age;
  std::optional<Sex> sex;
  std::optional<double> weight;
  int strat_fold = 0;
};

struct DatasetIndex {
  std::vector<IndexRow> rows;
  // diagnostic scp code -> superclass, from the statement dictionary
  std::map<std::string, Superclass> scp_map;
  size_t skipped_rows = 0;  // rows dropped for unparseable scp_codes
};

// Reads the metadata CSV (scp_codes, age, sex, weight, strat_fold and a
// filename column) and the statements CSV (diagnostic rows define the
// superclass map). Rows with unparseable scp_codes are collected and
// skipped; structural problems raise schema errors.
DatasetIndex load_index(const std::filesystem::path& metadata_csv,
                        const std::filesystem::path& statements_csv);

struct LabelAssignment {
  std::set<Superclass> superclasses;
  std::optional<BinaryLabel> binary_label;  // unset when superclasses empty
};

// Union of mapped superclasses over the listed codes (confidence values are
// ignored); healthy iff the set is exactly {NORM}, diseased iff any disease
// superclass is present. An empty set marks the record unlabeled.
LabelAssignment assign_labels(const std::map<std::string, double>& scp_codes,
                              const std::map<std::string, Superclass>& scp_map);

// Single 5-class label with priority MI > STTC > CD > HYP > NORM; nullopt
// for the empty set.
std::optional<Superclass> primary_superclass(const std::set<Superclass>& s);

// Parses a python-dict-style scp_codes cell like
// "{'NORM': 100.0, 'SR': 0.0}". Returns false on malformed input.
bool parse_scp_codes(const std::string& text,
                     std::map<std::string, double>* out);

}  // namespace ecgkit
