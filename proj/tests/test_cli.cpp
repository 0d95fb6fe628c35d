// End-to-end runs of the installed binary. Commands go through std::system;
// the binary path is injected by the build.
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "feature_table.hpp"
#include "fixtures.hpp"

#ifndef ECGKIT_CLI_PATH
#error "build must define ECGKIT_CLI_PATH"
#endif

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(ECGKIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli extract, stats and train on a fixture dataset") {
  fixtures::TempDir data("cli_data");
  fixtures::TempDir out("cli_out");
  fixtures::DatasetSpec spec;
  spec.n_records = 40;
  fixtures::make_dataset(data.path, spec);

  const std::string common =
      "--data-dir " + data.path.string() + " --out " + out.path.string();

  CHECK(run_cli("extract " + common + " --jobs 3") == 0);
  REQUIRE(fixtures::fs::exists(out.path / "features.csv"));
  const ecgkit::FeatureTable table =
      ecgkit::read_feature_csv(out.path / "features.csv");
  CHECK(table.rows.size() == 40);

  CHECK(run_cli("stats " + common + " --alpha 0.001") == 0);
  CHECK(fixtures::fs::exists(out.path / "stats_report.csv"));
  CHECK(fixtures::fs::exists(out.path / "heatmap.csv"));

  CHECK(run_cli("train " + common + " --feature-set +cross --test-fold 10") == 0);
  CHECK(fixtures::fs::exists(out.path / "metrics_binary_cross.csv"));
  CHECK(fixtures::fs::exists(out.path / "roc_binary_cross.csv"));
  CHECK(fixtures::fs::exists(out.path / "confusion_binary_cross.csv"));
}

TEST_CASE("cli exit codes distinguish failure classes") {
  fixtures::TempDir out("cli_err");
  // config error: unknown key through --set
  CHECK(run_cli("extract --set not.a.key=1 --out " + out.path.string()) == 2);
  // config error: missing data.dir
  CHECK(run_cli("extract --out " + out.path.string()) == 2);
  // data error: nonexistent dataset directory
  CHECK(run_cli("extract --data-dir /no/such/place --out " +
                out.path.string()) != 0);
  // usage error: unknown subcommand
  CHECK(run_cli("frobnicate") != 0);
  // config file that does not parse
  std::ofstream(out.path / "bad.cfg") << "nonsense without equals\n";
  CHECK(run_cli("extract --config " + (out.path / "bad.cfg").string()) == 2);
}

TEST_CASE("cli help runs clean") {
  CHECK(run_cli("--help") == 0);
}
