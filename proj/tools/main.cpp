// ecgkit command line: extract / stats / train / report over the C API.
// Exit codes: 0 success, 1 usage, 2 config error, 3 data error, 4 numerical
// failure, 5 i/o error, 6 degenerate input.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecgkit/ecgkit.h"

namespace {

struct ConfigHandle {
  ecgkit_config* cfg = ecgkit_config_create();
  ~ConfigHandle() { ecgkit_config_free(cfg); }
};

int fail_with(int status, const char* stage) {
  std::fprintf(stderr, "ecgkit %s: %s", stage, ecgkit_status_message(status));
  const char* detail = ecgkit_last_error();
  if (detail && detail[0]) std::fprintf(stderr, ": %s", detail);
  std::fprintf(stderr, "\n");
  return status;
}

int apply(ConfigHandle& handle, const std::string& key,
          const std::string& value) {
  return ecgkit_config_set(handle.cfg, key.c_str(), value.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonlinear complexity features, group statistics and "
               "classification for multi-lead ECG datasets"};
  app.require_subcommand(1);

  std::string config_file, data_dir, out_dir, feature_set, format, features_csv;
  std::string alpha, test_fold, jobs;
  std::vector<std::string> overrides;

  app.add_option("--config", config_file, "key=value configuration file");
  app.add_option("--data-dir", data_dir, "dataset directory");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--feature-set", feature_set,
                 "baseline, +complexity, +cross or +meta");
  app.add_option("--alpha", alpha, "significance level for the stats report");
  app.add_option("--test-fold", test_fold, "held-out stratification fold");
  app.add_option("--jobs", jobs, "extraction worker count (0 = cores)");
  app.add_option("--format", format, "record format: wfdb or csv");
  app.add_option("--set", overrides, "extra key=value overrides")
      ->type_name("KEY=VALUE");

  auto* cmd_extract = app.add_subcommand("extract", "extract feature table");
  auto* cmd_stats = app.add_subcommand("stats", "group comparison report");
  auto* cmd_train = app.add_subcommand("train", "train and evaluate a model");
  std::string task = "binary";
  cmd_train->add_option("--task", task, "binary or five");
  cmd_train->add_option("--features", features_csv, "feature CSV to train on");
  cmd_stats->add_option("--features", features_csv, "feature CSV to test");
  auto* cmd_report =
      app.add_subcommand("report", "extract + stats + full training sweep");
  // global flags may follow the subcommand
  for (auto* sub : {cmd_extract, cmd_stats, cmd_train, cmd_report})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  ConfigHandle handle;
  if (!handle.cfg) {
    std::fprintf(stderr, "ecgkit: cannot allocate configuration\n");
    return ECGKIT_ERR_NUMERIC;
  }

  int rc = ECGKIT_OK;
  if (!config_file.empty())
    rc = ecgkit_config_load_file(handle.cfg, config_file.c_str());
  if (rc) return fail_with(rc, "config");

  // Flags override file values.
  if (!rc && !data_dir.empty()) rc = apply(handle, "data.dir", data_dir);
  if (!rc && !out_dir.empty()) rc = apply(handle, "out.dir", out_dir);
  if (!rc && !format.empty()) rc = apply(handle, "data.format", format);
  if (!rc && !alpha.empty()) rc = apply(handle, "stats.alpha", alpha);
  if (!rc && !jobs.empty()) rc = apply(handle, "extract.jobs", jobs);
  if (!rc && !test_fold.empty()) rc = apply(handle, "train.test_fold", test_fold);
  if (!rc && !feature_set.empty()) {
    rc = apply(handle, "extract.feature_set", feature_set);
    if (!rc) rc = apply(handle, "train.feature_set", feature_set);
  }
  if (!rc && !features_csv.empty()) {
    rc = apply(handle, "stats.feature_csv", features_csv);
    if (!rc) rc = apply(handle, "train.feature_csv", features_csv);
  }
  if (!rc && cmd_train->parsed()) rc = apply(handle, "train.task", task);
  for (const std::string& kv : overrides) {
    if (rc) break;
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "ecgkit: --set expects KEY=VALUE, got '%s'\n",
                   kv.c_str());
      return ECGKIT_ERR_CONFIG;
    }
    rc = apply(handle, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (rc) return fail_with(rc, "config");

  if (cmd_extract->parsed()) {
    rc = ecgkit_run_extract(handle.cfg);
    if (rc) return fail_with(rc, "extract");
  } else if (cmd_stats->parsed()) {
    rc = ecgkit_run_stats(handle.cfg);
    if (rc) return fail_with(rc, "stats");
  } else if (cmd_train->parsed()) {
    rc = ecgkit_run_train(handle.cfg);
    if (rc) return fail_with(rc, "train");
  } else if (cmd_report->parsed()) {
    rc = ecgkit_run_report(handle.cfg);
    if (rc) return fail_with(rc, "report");
  }
  return 0;
}
