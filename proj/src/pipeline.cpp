#include "pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "csv.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "features.hpp"
#include "stats.hpp"
#include "wfdb.hpp"

namespace ecgkit {

namespace {

ExtractionParams extraction_params(const RunConfig& cfg) {
  ExtractionParams p;
  p.detrend_order = cfg.get_int("preprocess.detrend_order");
  p.rpeak_threshold_quantile = cfg.get_double("rpeak.threshold_quantile");
  p.rpeak_threshold_scale = cfg.get_double("rpeak.threshold_scale");
  p.rpeak_max_fraction = cfg.get_double("rpeak.max_fraction");
  p.rpeak_refractory_ms = cfg.get_double("rpeak.refractory_ms");
  p.complexity.hd_kmax = cfg.get_int("complexity.hd_kmax");
  p.complexity.apen_m = cfg.get_int("complexity.apen_m");
  p.complexity.apen_r = cfg.get_double("complexity.apen_r");
  p.complexity.permen_m = cfg.get_int("complexity.permen_m");
  p.complexity.permen_tau = cfg.get_int("complexity.permen_tau");
  p.complexity.mse_scales = cfg.get_int("complexity.mse_scales");
  p.complexity.mse_m = cfg.get_int("complexity.mse_m");
  p.complexity.mse_r = cfg.get_double("complexity.mse_r");
  p.rqa_m = cfg.get_int("rqa.embed_m");
  p.rqa_tau = cfg.get_int("rqa.tau");
  p.rqa_target_rr = cfg.get_double("rqa.target_rr");
  p.rqa_l_min = cfg.get_int("rqa.l_min");
  p.rqa_v_min = cfg.get_int("rqa.v_min");
  p.mi_bins = cfg.get_int("cross.mi_bins");
  p.complexity_lead = cfg.get("leads.complexity");
  p.cross_leads.clear();
  std::string leads = cfg.get("leads.cross");
  size_t pos = 0;
  while (pos <= leads.size()) {
    size_t comma = leads.find(',', pos);
    if (comma == std::string::npos) comma = leads.size();
    const std::string lead = leads.substr(pos, comma - pos);
    if (!lead.empty()) p.cross_leads.push_back(lead);
    pos = comma + 1;
  }
  if (p.cross_leads.size() != 3)
    fail(ErrorKind::config, "leads.cross must name exactly three leads");
  return p;
}

FeatureSet feature_set_or_fail(const std::string& name) {
  const auto set = feature_set_from_name(name);
  if (!set)
    fail(ErrorKind::config,
         "unknown feature set '" + name +
             "' (expected baseline, +complexity, +cross or +meta)");
  return *set;
}

std::filesystem::path feature_csv_path(const RunConfig& cfg,
                                       const std::string& override_key) {
  const std::string explicit_path = cfg.get(override_key);
  if (!explicit_path.empty()) return explicit_path;
  return std::filesystem::path(cfg.get("out.dir")) / "features.csv";
}

const char* feature_set_file_tag(FeatureSet s) {
  switch (s) {
    case FeatureSet::baseline: return "baseline";
    case FeatureSet::complexity: return "complexity";
    case FeatureSet::cross: return "cross";
    case FeatureSet::meta: return "meta";
  }
  return "unknown";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_hash_line(std::ofstream& out, uint64_t hash) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  out << "# config_hash=" << buf << "\n";
}

}  // namespace

ExtractOutcome run_extract(const RunConfig& cfg) {
  const std::filesystem::path data_dir = cfg.get("data.dir");
  if (data_dir.empty()) fail(ErrorKind::config, "data.dir is not set");
  const std::string format = cfg.get("data.format");
  if (format != "wfdb" && format != "csv")
    fail(ErrorKind::config, "data.format must be 'wfdb' or 'csv'");
  const std::filesystem::path out_dir = cfg.get("out.dir");
  std::filesystem::create_directories(out_dir);

  const DatasetIndex index = load_index(data_dir / cfg.get("data.metadata_csv"),
                                        data_dir / cfg.get("data.statements_csv"));
  std::cerr << "index: " << index.rows.size() << " records, "
            << index.scp_map.size() << " diagnostic statements";
  if (index.skipped_rows)
    std::cerr << ", " << index.skipped_rows << " rows skipped";
  std::cerr << "\n";

  const ExtractionParams params = extraction_params(cfg);
  const double csv_rate = cfg.get_double("data.csv_sampling_rate");

  const size_t n = index.rows.size();
  std::vector<std::optional<RecordFeatures>> results(n);
  std::vector<std::string> failures(n);

  size_t jobs = static_cast<size_t>(std::max(0, cfg.get_int("extract.jobs")));
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<size_t>(n, 1));

  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    for (size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) {
      const IndexRow& row = index.rows[i];
      try {
        EcgRecord rec;
        if (format == "wfdb") {
          rec = read_wfdb_record(data_dir / (row.signal_path + ".hea"));
        } else {
          std::filesystem::path p = data_dir / row.signal_path;
          if (p.extension() != ".csv") p += ".csv";
          rec = read_csv_record(p, csv_rate);
        }
        rec.record_id = row.record_id;  // index is authoritative for ids
        rec.age = row.age;
        rec.sex = row.sex;
        rec.weight = row.weight;
        rec.strat_fold = row.strat_fold;
        const LabelAssignment labels = assign_labels(row.scp_codes, index.scp_map);
        rec.superclasses = labels.superclasses;
        rec.binary_label = labels.binary_label;
        results[i] = extract_record_features(rec, params);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ExtractOutcome outcome;
  outcome.attempted = n;

  std::ofstream log(out_dir / "extract.log");
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    log << "# config_hash=" << buf << "\n";
  }
  std::vector<RecordFeatures> rows;
  rows.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (!results[i]) {
      ++outcome.failed;
      log << index.rows[i].record_id << "\tFAILED\t" << failures[i] << "\n";
      std::cerr << "record " << index.rows[i].record_id
                << " failed: " << failures[i] << "\n";
      continue;
    }
    const RecordFeatures& r = *results[i];
    if (!r.superclass_label) ++outcome.unlabeled;
    for (const auto& note : r.notes)
      log << r.record_id << "\tNOTE\t" << note << "\n";
    log << r.record_id << "\tTAU\t" << r.rqa_tau << "\n";
    rows.push_back(r);
  }
  for (const auto& row : index.rows) {
    const LabelAssignment l = assign_labels(row.scp_codes, index.scp_map);
    if (l.superclasses.size() > 1) ++outcome.multilabel;
  }

  const FeatureSet set = feature_set_or_fail(cfg.get("extract.feature_set"));
  std::vector<std::string> dropped;
  FeatureTable table = assemble(rows, set, &dropped);
  outcome.dropped = dropped.size();
  for (const auto& id : dropped) {
    log << id << "\tDROPPED\tmore than half of the features missing\n";
    std::cerr << "record " << id << " dropped: > 50% features missing\n";
  }
  outcome.extracted = table.rows.size();

  table.config_hash = cfg.hash();
  for (const auto& [key, value] : cfg.effective()) table.provenance[key] = value;

  outcome.feature_csv = out_dir / "features.csv";
  write_feature_csv(table, outcome.feature_csv);
  write_metadata_file(table, out_dir / "features.meta.txt");

  log << "# attempted=" << outcome.attempted << " extracted=" << outcome.extracted
      << " failed=" << outcome.failed << " dropped=" << outcome.dropped
      << " unlabeled=" << outcome.unlabeled
      << " multilabel=" << outcome.multilabel << "\n";
  std::cerr << "extracted " << outcome.extracted << "/" << outcome.attempted
            << " records (" << outcome.failed << " failed, " << outcome.dropped
            << " dropped, " << outcome.unlabeled << " unlabeled, "
            << outcome.multilabel << " multi-label)\n";

  outcome.ok = outcome.attempted > 0 &&
               static_cast<double>(outcome.extracted) >=
                   0.99 * static_cast<double>(outcome.attempted);
  return outcome;
}

namespace {

constexpr Superclass kDiseaseClasses[] = {Superclass::STTC, Superclass::MI,
                                          Superclass::CD, Superclass::HYP};

}  // namespace

StatsOutcome run_stats(const RunConfig& cfg) {
  const std::filesystem::path out_dir = cfg.get("out.dir");
  std::filesystem::create_directories(out_dir);
  const FeatureTable table =
      read_feature_csv(feature_csv_path(cfg, "stats.feature_csv"));
  const double alpha = cfg.get_double("stats.alpha");

  StatsOutcome outcome;
  outcome.report_csv = out_dir / "stats_report.csv";
  outcome.heatmap_csv = out_dir / "heatmap.csv";

  std::ofstream report(outcome.report_csv, std::ios::binary);
  std::ofstream heatmap(outcome.heatmap_csv, std::ios::binary);
  if (!report || !heatmap)
    fail(ErrorKind::io, "cannot write stats outputs under " + out_dir.string());
  write_hash_line(report, table.config_hash);
  write_hash_line(heatmap, table.config_hash);
  report << "feature,z,p_mw,H,p_kw";
  heatmap << "feature";
  for (Superclass c : kDiseaseClasses) {
    report << ",z_" << superclass_name(c);
    heatmap << ',' << superclass_name(c);
  }
  report << ",small_groups\n";
  heatmap << "\n";

  const size_t nf = table.feature_names.size();
  for (size_t f = 0; f < nf; ++f) {
    std::vector<double> diseased, healthy;
    std::vector<std::vector<double>> by_class(5);
    for (const auto& row : table.rows) {
      const double v = row.values[f];
      if (is_missing(v)) continue;
      if (row.binary_label) {
        (*row.binary_label == BinaryLabel::diseased ? diseased : healthy)
            .push_back(v);
      }
      if (row.superclass_label)
        by_class[static_cast<size_t>(*row.superclass_label)].push_back(v);
    }

    double z = std::nan(""), p_mw = std::nan("");
    if (!diseased.empty() && !healthy.empty()) {
      const TestResult mw = mann_whitney(diseased, healthy, alpha);
      z = mw.statistic;
      p_mw = mw.p_value;
    }

    double h = std::nan(""), p_kw = std::nan("");
    {
      std::vector<std::vector<double>> groups;
      for (const auto& g : by_class)
        if (!g.empty()) groups.push_back(g);
      if (groups.size() >= 2) {
        const TestResult kw = kruskal_wallis(groups, alpha);
        h = kw.statistic;
        p_kw = kw.p_value;
      }
    }

    outcome.features.push_back(table.feature_names[f]);
    outcome.mw_z.push_back(z);
    outcome.mw_p.push_back(p_mw);
    outcome.kw_h.push_back(h);
    outcome.kw_p.push_back(p_kw);

    report << table.feature_names[f] << ',' << format_double(z) << ','
           << format_double(p_mw) << ',' << format_double(h) << ','
           << format_double(p_kw);
    heatmap << table.feature_names[f];

    std::string small_groups;
    const std::vector<double>& norm = by_class[static_cast<size_t>(Superclass::NORM)];
    for (Superclass c : kDiseaseClasses) {
      const std::vector<double>& cls = by_class[static_cast<size_t>(c)];
      double zc = std::nan(""), pc = std::nan("");
      if (!cls.empty() && !norm.empty()) {
        const TestResult t = mann_whitney(cls, norm, alpha);
        zc = t.statistic;
        pc = t.p_value;
        if (cls.size() < 20 || norm.size() < 20) {
          if (!small_groups.empty()) small_groups += ' ';
          small_groups += superclass_name(c);
        }
      }
      report << ',' << format_double(zc);
      const double cell = (!std::isnan(pc) && pc < alpha) ? zc : 0.0;
      heatmap << ',' << format_double(std::isnan(zc) ? zc : cell);
    }
    report << ',' << small_groups << "\n";
    heatmap << "\n";
  }
  return outcome;
}

TrainOutcome run_train(const RunConfig& cfg) {
  const std::filesystem::path out_dir = cfg.get("out.dir");
  std::filesystem::create_directories(out_dir);
  const FeatureTable full =
      read_feature_csv(feature_csv_path(cfg, "train.feature_csv"));

  TrainOutcome outcome;
  const std::string task_name = cfg.get("train.task");
  if (task_name == "binary") outcome.task = Task::binary;
  else if (task_name == "five") outcome.task = Task::five_class;
  else fail(ErrorKind::config, "train.task must be 'binary' or 'five'");

  outcome.feature_set = feature_set_or_fail(cfg.get("train.feature_set"));
  const FeatureTable table = select_feature_set(full, outcome.feature_set);

  const Split split = split_by_fold(table, cfg.get_int("train.test_fold"));
  const DesignMatrix design = build_design(table, split, outcome.task);
  outcome.n_train = design.y_train.size();
  outcome.n_test = design.y_test.size();
  outcome.dropped_features = design.dropped_features;

  TrainOptions opt;
  opt.l2_lambda = cfg.get_double("train.l2_lambda");
  opt.max_iter = cfg.get_int("train.max_iter");
  opt.tol = cfg.get_double("train.tol");

  ModelParams model;
  if (outcome.task == Task::binary) {
    model = train_logistic(design.x_train, design.y_train.size(),
                           design.n_features, design.y_train, opt);
  } else {
    model = train_multinomial(design.x_train, design.y_train.size(),
                              design.n_features, design.y_train,
                              design.n_classes, opt);
  }
  outcome.converged = model.converged;
  outcome.metrics = evaluate(model, design.x_test, design.y_test.size(),
                             design.y_test);

  const std::string tag = std::string(task_name) + "_" +
                          feature_set_file_tag(outcome.feature_set);
  outcome.metrics_csv = out_dir / ("metrics_" + tag + ".csv");
  outcome.confusion_csv = out_dir / ("confusion_" + tag + ".csv");

  {
    std::ofstream out(outcome.metrics_csv, std::ios::binary);
    write_hash_line(out, full.config_hash);
    out << "task,feature_set,n_train,n_test,accuracy,mcc,auc,"
           "ovo_macro_auc,ovo_weighted_auc,ovr_macro_auc,ovr_weighted_auc,"
           "converged,iterations\n";
    const EvalMetrics& m = outcome.metrics;
    out << task_name << ',' << feature_set_name(outcome.feature_set) << ','
        << outcome.n_train << ',' << outcome.n_test << ','
        << format_double(m.accuracy) << ',' << format_double(m.mcc) << ','
        << format_double(m.auc) << ',' << format_double(m.ovo_macro_auc) << ','
        << format_double(m.ovo_weighted_auc) << ','
        << format_double(m.ovr_macro_auc) << ','
        << format_double(m.ovr_weighted_auc) << ','
        << (model.converged ? 1 : 0) << ',' << model.iterations << "\n";
  }
  {
    std::ofstream out(outcome.confusion_csv, std::ios::binary);
    write_hash_line(out, full.config_hash);
    const size_t k = outcome.metrics.n_classes;
    out << "true\\pred";
    for (size_t c = 0; c < k; ++c) out << ',' << design.class_names[c];
    out << "\n";
    for (size_t r = 0; r < k; ++r) {
      out << design.class_names[r];
      for (size_t c = 0; c < k; ++c)
        out << ',' << outcome.metrics.confusion[r * k + c];
      out << "\n";
    }
  }
  if (outcome.task == Task::binary) {
    outcome.roc_csv = out_dir / ("roc_" + tag + ".csv");
    std::ofstream out(outcome.roc_csv, std::ios::binary);
    write_hash_line(out, full.config_hash);
    out << "threshold,fpr,tpr\n";
    const std::vector<double> proba =
        predict_proba(model, design.x_test, design.y_test.size());
    std::vector<double> scores(design.y_test.size());
    for (size_t i = 0; i < scores.size(); ++i) scores[i] = proba[i * 2 + 1];
    for (const RocPoint& pt : roc_curve(scores, design.y_test))
      out << format_double(pt.threshold) << ',' << format_double(pt.fpr) << ','
          << format_double(pt.tpr) << "\n";
  }

  for (const auto& name : outcome.dropped_features)
    std::cerr << "feature '" << name
              << "' dropped: zero variance in the training folds\n";
  std::cerr << task_name << " " << feature_set_name(outcome.feature_set)
            << ": accuracy=" << outcome.metrics.accuracy
            << " mcc=" << outcome.metrics.mcc;
  if (outcome.task == Task::binary)
    std::cerr << " auc=" << outcome.metrics.auc;
  else
    std::cerr << " ovr_macro_auc=" << outcome.metrics.ovr_macro_auc;
  std::cerr << (outcome.converged ? "" : " (not converged)") << "\n";
  return outcome;
}

void run_report(const RunConfig& cfg) {
  run_extract(cfg);
  run_stats(cfg);

  const std::filesystem::path out_dir = cfg.get("out.dir");
  std::ofstream summary(out_dir / "model_report.txt");
  write_hash_line(summary, cfg.hash());
  summary << "binary classification, logistic regression, test fold "
          << cfg.get("train.test_fold") << "\n";
  summary << "feature_set        accuracy    mcc     auc\n";

  for (const char* set : {"baseline", "+complexity", "+cross", "+meta"}) {
    RunConfig sub = cfg;
    sub.set("train.task", "binary");
    sub.set("train.feature_set", set);
    const TrainOutcome t = run_train(sub);
    char line[128];
    std::snprintf(line, sizeof line, "%-18s %8.3f %7.3f %7.3f\n", set,
                  t.metrics.accuracy, t.metrics.mcc, t.metrics.auc);
    summary << line;
  }

  RunConfig five = cfg;
  five.set("train.task", "five");
  five.set("train.feature_set", cfg.get("five.feature_set"));
  const TrainOutcome t5 = run_train(five);
  summary << "\nfive-class multinomial, feature set "
          << cfg.get("five.feature_set") << "\n";
  char line[192];
  std::snprintf(line, sizeof line,
                "accuracy=%.3f mcc=%.3f ovo_macro=%.3f ovo_weighted=%.3f "
                "ovr_macro=%.3f ovr_weighted=%.3f\n",
                t5.metrics.accuracy, t5.metrics.mcc, t5.metrics.ovo_macro_auc,
                t5.metrics.ovo_weighted_auc, t5.metrics.ovr_macro_auc,
                t5.metrics.ovr_weighted_auc);
  summary << line;
}

}  // namespace ecgkit
