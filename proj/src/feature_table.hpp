#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signal.hpp"

namespace ecgkit {

// Which cumulative feature block a table carries. Each set extends the one
// before it: standard -> + single-channel complexity -> + cross-channel ->
// + demographics.
enum class FeatureSet { baseline, complexity, cross, meta };

const char* feature_set_name(FeatureSet s);
std::optional<FeatureSet> feature_set_from_name(std::string name);

// Ordered column names for a feature set.
std::vector<std::string> feature_columns(FeatureSet s);

struct FeatureRow {
  std::string record_id;
  std::vector<double> values;  // NaN marks a missing value
  std::optional<BinaryLabel> binary_label;
  std::optional<Superclass> superclass_label;
  int strat_fold = 0;
};

// The interchange table between extraction, stats, and modeling. Persisted
// as CSV (missing = empty cell) with a '# config_hash=...' first line and a
// companion key=value metadata file.
struct FeatureTable {
  std::vector<std::string> feature_names;
  std::vector<FeatureRow> rows;
  std::map<std::string, std::string> provenance;  // extraction parameters
  uint64_t config_hash = 0;

  int column(const std::string& name) const;  // -1 when absent
  // Values of one feature over rows, missing entries skipped, optionally
  // restricted by a row predicate.
  std::vector<double> column_values(int col) const;
};

void write_feature_csv(const FeatureTable& table,
                       const std::filesystem::path& path);
FeatureTable read_feature_csv(const std::filesystem::path& path);

void write_metadata_file(const FeatureTable& table,
                         const std::filesystem::path& path);

// Orders record ids numerically when both are numeric, lexicographically
// otherwise; keeps output deterministic across worker schedules.
bool record_id_less(const std::string& a, const std::string& b);

}  // namespace ecgkit
