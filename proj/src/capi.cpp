// extern "C" surface of libecgkit. Exceptions from the C++ core are caught
// at this boundary and turned into status codes; the message lands in a
// thread-local buffer for ecgkit_last_error().

#include "ecgkit/ecgkit.h"

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "complexity.hpp"
#include "config.hpp"
#include "crosschannel.hpp"
#include "errors.hpp"
#include "pipeline.hpp"
#include "preprocess.hpp"
#include "recurrence.hpp"
#include "signal.hpp"
#include "stats.hpp"
#include "wfdb.hpp"

using namespace ecgkit;

namespace {

thread_local std::string g_last_error;

int set_error(int status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ECGKIT_OK;
  } catch (const Error& e) {
    return set_error(static_cast<int>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ECGKIT_ERR_NUMERIC, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ECGKIT_ERR_DATA, e.what());
  }
}

}  // namespace

struct ecgkit_config {
  RunConfig cfg;
};

struct ecgkit_record {
  EcgRecord rec;
};

extern "C" {

const char* ecgkit_status_message(int status) {
  switch (status) {
    case ECGKIT_OK: return "ok";
    case ECGKIT_ERR_ARGUMENT: return "invalid argument";
    case ECGKIT_ERR_CONFIG: return "configuration error";
    case ECGKIT_ERR_DATA: return "data error";
    case ECGKIT_ERR_NUMERIC: return "numerical failure";
    case ECGKIT_ERR_IO: return "i/o error";
    case ECGKIT_ERR_DEGENERATE: return "degenerate input";
  }
  return "unknown status";
}

const char* ecgkit_last_error(void) { return g_last_error.c_str(); }

const char* ecgkit_version(void) { return "0.1.0"; }

ecgkit_config* ecgkit_config_create(void) {
  try {
    return new ecgkit_config();
  } catch (...) {
    return nullptr;
  }
}

void ecgkit_config_free(ecgkit_config* cfg) { delete cfg; }

int ecgkit_config_load_file(ecgkit_config* cfg, const char* path) {
  if (!cfg || !path) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { cfg->cfg.load_file(path); });
}

int ecgkit_config_set(ecgkit_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value)
    return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { cfg->cfg.set(key, value); });
}

int ecgkit_config_get(const ecgkit_config* cfg, const char* key, char* buf,
                      size_t buflen) {
  if (!cfg || !key || !buf || buflen == 0)
    return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string v = cfg->cfg.get(key);
    if (v.size() + 1 > buflen)
      fail(ErrorKind::argument, "buffer too small for value of " +
                                    std::string(key));
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

uint64_t ecgkit_config_hash(const ecgkit_config* cfg) {
  return cfg ? cfg->cfg.hash() : 0;
}

int ecgkit_run_extract(const ecgkit_config* cfg) {
  if (!cfg) return set_error(ECGKIT_ERR_ARGUMENT, "null config");
  return guarded([&] {
    const ExtractOutcome outcome = run_extract(cfg->cfg);
    if (!outcome.ok)
      fail(ErrorKind::data,
           "extraction below the 99% completeness gate: " +
               std::to_string(outcome.extracted) + "/" +
               std::to_string(outcome.attempted) + " records");
  });
}

int ecgkit_run_stats(const ecgkit_config* cfg) {
  if (!cfg) return set_error(ECGKIT_ERR_ARGUMENT, "null config");
  return guarded([&] { run_stats(cfg->cfg); });
}

int ecgkit_run_train(const ecgkit_config* cfg) {
  if (!cfg) return set_error(ECGKIT_ERR_ARGUMENT, "null config");
  return guarded([&] { run_train(cfg->cfg); });
}

int ecgkit_run_report(const ecgkit_config* cfg) {
  if (!cfg) return set_error(ECGKIT_ERR_ARGUMENT, "null config");
  return guarded([&] { run_report(cfg->cfg); });
}

int ecgkit_record_read(const char* path, const char* format,
                       double sampling_rate_hint, ecgkit_record** out) {
  if (!path || !format || !out)
    return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string fmt(format);
    EcgRecord rec;
    if (fmt == "wfdb") {
      rec = read_wfdb_record(path);
    } else if (fmt == "csv") {
      rec = read_csv_record(path, sampling_rate_hint > 0.0 ? sampling_rate_hint
                                                           : 100.0);
    } else {
      fail(ErrorKind::argument, "unknown record format '" + fmt + "'");
    }
    *out = new ecgkit_record{std::move(rec)};
  });
}

void ecgkit_record_free(ecgkit_record* rec) { delete rec; }

int ecgkit_record_num_leads(const ecgkit_record* rec) {
  return rec ? static_cast<int>(rec->rec.leads.size()) : 0;
}

size_t ecgkit_record_num_samples(const ecgkit_record* rec) {
  if (!rec || rec->rec.leads.empty()) return 0;
  return rec->rec.leads.front().size();
}

double ecgkit_record_sampling_rate(const ecgkit_record* rec) {
  return rec ? rec->rec.sampling_rate : 0.0;
}

const char* ecgkit_record_lead_name(const ecgkit_record* rec, int lead) {
  if (!rec || lead < 0 ||
      static_cast<size_t>(lead) >= rec->rec.lead_names.size())
    return nullptr;
  return rec->rec.lead_names[static_cast<size_t>(lead)].c_str();
}

int ecgkit_record_samples(const ecgkit_record* rec, int lead, double* buf,
                          size_t buflen) {
  if (!rec || !buf) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  if (lead < 0 || static_cast<size_t>(lead) >= rec->rec.leads.size())
    return set_error(ECGKIT_ERR_ARGUMENT, "lead index out of range");
  const auto& samples = rec->rec.leads[static_cast<size_t>(lead)];
  const size_t count = std::min(buflen, samples.size());
  std::memcpy(buf, samples.data(), count * sizeof(double));
  g_last_error.clear();
  return ECGKIT_OK;
}

int ecgkit_detrend(const double* x, size_t n, int order, double* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    Signal sig{{x, x + n}, 1.0};
    const Signal res = detrend_polynomial(sig, order);
    std::memcpy(out, res.samples.data(), n * sizeof(double));
  });
}

int ecgkit_standardize(const double* x, size_t n, double* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    Signal sig{{x, x + n}, 1.0};
    const Signal res = standardize(sig);
    std::memcpy(out, res.samples.data(), n * sizeof(double));
  });
}

int ecgkit_detect_r_peaks(const double* x, size_t n, double sampling_rate,
                          size_t* peaks, size_t max_peaks, size_t* n_peaks) {
  if (!x || !peaks || !n_peaks)
    return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    Signal sig{{x, x + n}, sampling_rate};
    const PeakTrain train = detect_r_peaks(sig);
    const size_t count = std::min(max_peaks, train.indices.size());
    for (size_t i = 0; i < count; ++i) peaks[i] = train.indices[i];
    *n_peaks = train.indices.size();
  });
}

int ecgkit_higuchi_fd(const double* x, size_t n, int kmax, double* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = higuchi_fd({x, n}, kmax); });
}

int ecgkit_approx_entropy(const double* x, size_t n, int m, double r_multiple,
                          double* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = approx_entropy({x, n}, m, r_multiple); });
}

int ecgkit_sample_entropy(const double* x, size_t n, int m, double r,
                          double* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = sample_entropy({x, n}, m, r); });
}

int ecgkit_permutation_entropy(const double* x, size_t n, int m, int tau,
                               int normalize, double* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = permutation_entropy({x, n}, m, tau, normalize != 0); });
}

int ecgkit_lz_complexity(const double* x, size_t n, double* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = lz_complexity({x, n}); });
}

int ecgkit_multiscale_entropy(const double* x, size_t n, int n_scales, int m,
                              double r_multiple, double* curve,
                              double* scalar) {
  if (!x || !curve || !scalar)
    return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const MseResult res = multiscale_entropy({x, n}, n_scales, m, r_multiple);
    std::memcpy(curve, res.curve.data(), res.curve.size() * sizeof(double));
    *scalar = res.scalar;
  });
}

int ecgkit_rqa(const double* x, size_t n, int m, int tau, double target_rr,
               int l_min, int v_min, ecgkit_rqa_result* out) {
  if (!x || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const RecurrencePlot rp = recurrence_plot({x, n}, m, tau, target_rr);
    const RqaSummary sum = rqa(rp, l_min, v_min);
    out->recurrence_rate = sum.recurrence_rate;
    out->det = sum.det;
    out->lam = sum.lam;
    out->dbyl = sum.dbyl;
    out->tt = sum.tt;
    out->d_ent = sum.d_ent;
    out->v_ent = sum.v_ent;
    out->tau = sum.tau;
  });
}

int ecgkit_spearman(const double* x, const double* y, size_t n, double* out) {
  if (!x || !y || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = spearman({x, n}, {y, n}); });
}

int ecgkit_mutual_information(const double* x, const double* y, size_t n,
                              int bins, double* out) {
  if (!x || !y || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = mutual_information({x, n}, {y, n}, bins); });
}

int ecgkit_mann_whitney(const double* a, size_t na, const double* b, size_t nb,
                        ecgkit_test_result* out) {
  if (!a || !b || !out) return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const TestResult r = mann_whitney({a, na}, {b, nb});
    out->statistic = r.statistic;
    out->p_value = r.p_value;
  });
}

int ecgkit_kruskal_wallis(const double* values, const size_t* group_sizes,
                          size_t n_groups, ecgkit_test_result* out) {
  if (!values || !group_sizes || !out)
    return set_error(ECGKIT_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::vector<double>> groups;
    size_t offset = 0;
    for (size_t g = 0; g < n_groups; ++g) {
      groups.emplace_back(values + offset, values + offset + group_sizes[g]);
      offset += group_sizes[g];
    }
    const TestResult r = kruskal_wallis(groups);
    out->statistic = r.statistic;
    out->p_value = r.p_value;
  });
}

}  // extern "C"
