#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "feature_table.hpp"
#include "model.hpp"

namespace ecgkit {

// Batch extraction over the configured dataset: fan out across a worker
// pool, merge in record-id order, write <out.dir>/features.csv and the
// key=value parameter metadata next to it. Per-record failures are logged
// and the run continues.
struct ExtractOutcome {
  size_t attempted = 0;
  size_t extracted = 0;   // rows present in the output table
  size_t failed = 0;      // read/extract errors
  size_t dropped = 0;     // > 50% missing features
  size_t unlabeled = 0;   // annotations outside the five superclasses
  size_t multilabel = 0;  // more than one superclass
  std::filesystem::path feature_csv;
  bool ok = false;  // >= 99% of attempted records extracted
};

ExtractOutcome run_extract(const RunConfig& cfg);

// Group comparisons per feature: Mann-Whitney diseased vs healthy,
// Kruskal-Wallis across the five superclasses, and per-disease-class z
// against NORM. Writes stats_report.csv and heatmap.csv (z of cells with
// p >= alpha set to 0).
struct StatsOutcome {
  std::filesystem::path report_csv;
  std::filesystem::path heatmap_csv;
  // Parallel arrays, one entry per feature.
  std::vector<std::string> features;
  std::vector<double> mw_z;
  std::vector<double> mw_p;
  std::vector<double> kw_h;
  std::vector<double> kw_p;
};

StatsOutcome run_stats(const RunConfig& cfg);

// Trains the configured task on the configured feature set and evaluates on
// the held-out fold. Writes a metrics CSV + text report, the ROC points
// (binary) and the confusion matrix.
struct TrainOutcome {
  Task task = Task::binary;
  FeatureSet feature_set = FeatureSet::baseline;
  EvalMetrics metrics;
  bool converged = false;
  size_t n_train = 0;
  size_t n_test = 0;
  std::vector<std::string> dropped_features;
  std::filesystem::path metrics_csv;
  std::filesystem::path roc_csv;        // binary only
  std::filesystem::path confusion_csv;
};

TrainOutcome run_train(const RunConfig& cfg);

// extract + stats + binary training over every feature set + the 5-class
// task; writes model_report.txt summarizing the ablation.
void run_report(const RunConfig& cfg);

}  // namespace ecgkit
