#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ecgkit {

// One scalar channel. Millivolts as read from disk, dimensionless once
// standardized.
struct Signal {
  std::vector<double> samples;
  double sampling_rate = 0.0;

  size_t size() const { return samples.size(); }
};

enum class Sex { male = 0, female = 1 };

enum class Superclass { NORM, MI, STTC, CD, HYP };

const char* superclass_name(Superclass c);
std::optional<Superclass> superclass_from_name(const std::string& name);

enum class BinaryLabel { healthy, diseased };

// One patient recording with its labels and demographics. Lead order is
// preserved from the source file; names are upper-cased on ingest.
struct EcgRecord {
  std::string record_id;
  double sampling_rate = 0.0;
  std::vector<std::string> lead_names;
  std::vector<std::vector<double>> leads;  // parallel to lead_names
  std::optional<double> age;
  std::optional<Sex> sex;
  std::optional<double> weight;
  std::set<Superclass> superclasses;
  std::optional<BinaryLabel> binary_label;  // unset until labels assigned
  int strat_fold = 0;

  const std::vector<double>* find_lead(const std::string& name) const;
};

// Detected R peaks and the derived inter-beat intervals (seconds).
struct PeakTrain {
  std::vector<size_t> indices;
  std::vector<double> rr_intervals;
};

inline double missing_value() { return std::nan(""); }
inline bool is_missing(double v) { return std::isnan(v); }

}  // namespace ecgkit
