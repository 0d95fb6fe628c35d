#include "config.hpp"

#include <algorithm>
#include <fstream>

#include "errors.hpp"
#include "mathutil.hpp"

namespace ecgkit {

namespace {

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t");
  const size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig::RunConfig() {
  defaults_ = {
      {"data.dir", ""},
      {"data.format", "wfdb"},  // wfdb | csv
      {"data.metadata_csv", "ptbxl_database.csv"},
      {"data.statements_csv", "scp_statements.csv"},
      {"data.csv_sampling_rate", "100"},
      {"out.dir", "out"},
      {"extract.jobs", "0"},  // 0 = hardware concurrency
      {"extract.feature_set", "+meta"},
      {"preprocess.detrend_order", "20"},
      {"rpeak.threshold_quantile", "0.95"},
      {"rpeak.threshold_scale", "0.6"},
      {"rpeak.max_fraction", "0.5"},
      {"rpeak.refractory_ms", "200"},
      {"complexity.hd_kmax", "10"},
      {"complexity.apen_m", "2"},
      {"complexity.apen_r", "0.2"},
      {"complexity.permen_m", "3"},
      {"complexity.permen_tau", "1"},
      {"complexity.mse_scales", "20"},
      {"complexity.mse_m", "2"},
      {"complexity.mse_r", "0.15"},
      {"leads.complexity", "II"},
      {"leads.cross", "II,AVL,V2"},
      {"rqa.embed_m", "3"},
      {"rqa.tau", "0"},  // 0 = first autocorrelation minimum
      {"rqa.target_rr", "0.10"},
      {"rqa.l_min", "2"},
      {"rqa.v_min", "2"},
      {"cross.mi_bins", "16"},
      {"stats.alpha", "0.001"},
      {"stats.feature_csv", ""},  // empty = <out.dir>/features.csv
      {"train.feature_csv", ""},
      {"train.feature_set", "+cross"},
      {"train.task", "binary"},  // binary | five
      {"train.test_fold", "10"},
      {"train.l2_lambda", "0.001"},
      {"train.max_iter", "2000"},
      {"train.tol", "1e-6"},
      {"five.feature_set", "+meta"},
  };
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "cannot open config file " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::config, path.string() + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!defaults_.count(key))
    fail(ErrorKind::config, "unknown config key '" + key + "'");
  values_[key] = value;
}

bool RunConfig::has_key(const std::string& key) const {
  return defaults_.count(key) > 0;
}

std::string RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  const auto dit = defaults_.find(key);
  if (dit == defaults_.end())
    fail(ErrorKind::config, "unknown config key '" + key + "'");
  return dit->second;
}

double RunConfig::get_double(const std::string& key) const {
  const std::string v = get(key);
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    fail(ErrorKind::config, "config key '" + key + "' is not numeric: " + v);
  }
}

int RunConfig::get_int(const std::string& key) const {
  const std::string v = get(key);
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    fail(ErrorKind::config, "config key '" + key + "' is not an integer: " + v);
  }
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string v = get(key);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  fail(ErrorKind::config, "config key '" + key + "' is not a boolean: " + v);
}

uint64_t RunConfig::hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& [key, value] : effective()) {
    // Execution-only knobs do not change any computed value, so two runs
    // that differ only in them must hash alike (and produce identical
    // output bytes).
    if (key == "extract.jobs" || key == "out.dir") continue;
    h = fnv1a64(key.data(), key.size(), h);
    h = fnv1a64("=", 1, h);
    h = fnv1a64(value.data(), value.size(), h);
    h = fnv1a64("\n", 1, h);
  }
  return h;
}

std::vector<std::pair<std::string, std::string>> RunConfig::effective() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(defaults_.size());
  for (const auto& [key, def] : defaults_) {
    const auto it = values_.find(key);
    out.emplace_back(key, it != values_.end() ? it->second : def);
  }
  return out;  // std::map iteration is already sorted
}

}  // namespace ecgkit
