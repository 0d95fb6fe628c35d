#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "complexity.hpp"
#include "feature_table.hpp"
#include "signal.hpp"

namespace ecgkit {

struct AmplitudeStats {
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // sample (n-1)
};

AmplitudeStats amplitude_stats(std::span<const double> x);

struct RrStats {
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;
  bool valid = false;  // needs >= 2 intervals
};

RrStats rr_stats(const PeakTrain& peaks);

struct SpectralFeatures {
  double f1 = 0.0;  // Hz
  double f2 = 0.0;
  double p_f1 = 0.0;
  double p_f2 = 0.0;
  double harmonic_ratio = 0.0;  // P(f1)/P(2 f1), NaN when unavailable
  bool valid = false;
};

// Hann-windowed periodogram of the standardized signal, DC excluded. f2 is
// the strongest bin not adjacent to f1's.
SpectralFeatures spectral_features(const Signal& signal);

struct ExtractionParams {
  int detrend_order = 20;
  double rpeak_threshold_quantile = 0.95;
  double rpeak_threshold_scale = 0.6;
  double rpeak_max_fraction = 0.5;
  double rpeak_refractory_ms = 200.0;
  ComplexityParams complexity;
  int rqa_m = 3;
  int rqa_tau = 0;  // 0 = autocorrelation minimum
  double rqa_target_rr = 0.10;
  int rqa_l_min = 2;
  int rqa_v_min = 2;
  int mi_bins = 16;
  std::string complexity_lead = "II";
  std::vector<std::string> cross_leads = {"II", "AVL", "V2"};
};

struct RecordFeatures {
  std::string record_id;
  std::vector<double> values;  // ordered per feature_columns(FeatureSet::meta)
  std::optional<BinaryLabel> binary_label;
  std::optional<Superclass> superclass_label;
  int strat_fold = 0;
  int rqa_tau = 0;               // delay chosen for the recurrence plot
  std::vector<std::string> notes;  // per-record flags (flat lead, few peaks...)
};

// Full per-record extraction: preprocess the involved leads, compute the
// baseline block on lead II, the complexity/RQA block on lead II, the
// cross-channel block on II/AVL/V2 and attach demographics. Missing leads
// or degenerate signals leave the affected block as NaN with a note.
RecordFeatures extract_record_features(const EcgRecord& record,
                                       const ExtractionParams& params);

// Assembles per-record results into a table restricted to the requested
// cumulative feature set; records with more than half of their features
// missing are dropped (returned in dropped_ids).
FeatureTable assemble(const std::vector<RecordFeatures>& records,
                      FeatureSet set,
                      std::vector<std::string>* dropped_ids = nullptr);

// Restrict an existing table (superset of columns) to a feature set.
FeatureTable select_feature_set(const FeatureTable& table, FeatureSet set);

}  // namespace ecgkit
