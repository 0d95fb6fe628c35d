#include "features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crosschannel.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "mathutil.hpp"
#include "preprocess.hpp"
#include "recurrence.hpp"

namespace ecgkit {

AmplitudeStats amplitude_stats(std::span<const double> x) {
  if (x.empty()) fail(ErrorKind::argument, "amplitude_stats: empty signal");
  AmplitudeStats s;
  s.mean = mean(x);
  s.median = median(x);
  s.std = stddev_sample(x);
  return s;
}

RrStats rr_stats(const PeakTrain& peaks) {
  RrStats s;
  if (peaks.rr_intervals.size() < 2) return s;
  s.mean = mean(peaks.rr_intervals);
  s.median = median(peaks.rr_intervals);
  s.std = stddev_sample(peaks.rr_intervals);
  s.valid = true;
  return s;
}

SpectralFeatures spectral_features(const Signal& signal) {
  SpectralFeatures out;
  const auto& x = signal.samples;
  const size_t n = x.size();
  if (n < 64 || signal.sampling_rate <= 0.0) return out;

  // Hann window, then a direct DFT of the real signal; records are short
  // enough (and all the same length) that the O(n^2) transform with a
  // precomputed twiddle table is cheap.
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(n - 1)));
    w[i] *= x[i];
  }

  std::vector<double> cos_table(n), sin_table(n);
  for (size_t t = 0; t < n; ++t) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(t) /
                     static_cast<double>(n);
    cos_table[t] = std::cos(a);
    sin_table[t] = std::sin(a);
  }

  const size_t nbins = n / 2;  // k = 1..n/2, DC excluded
  std::vector<double> power(nbins + 1, 0.0);
  for (size_t k = 1; k <= nbins; ++k) {
    double re = 0.0, im = 0.0;
    size_t phase = 0;
    for (size_t j = 0; j < n; ++j) {
      re += w[j] * cos_table[phase];
      im += w[j] * sin_table[phase];
      phase += k;
      if (phase >= n) phase -= n;
    }
    power[k] = (re * re + im * im) / static_cast<double>(n);
  }

  size_t k1 = 1;
  for (size_t k = 2; k <= nbins; ++k)
    if (power[k] > power[k1]) k1 = k;

  size_t k2 = 0;
  for (size_t k = 1; k <= nbins; ++k) {
    const size_t gap = k > k1 ? k - k1 : k1 - k;
    if (gap <= 1) continue;  // skip f1's bin and its neighbors
    if (k2 == 0 || power[k] > power[k2]) k2 = k;
  }
  if (k2 == 0) return out;

  const double bin_hz = signal.sampling_rate / static_cast<double>(n);
  out.f1 = static_cast<double>(k1) * bin_hz;
  out.f2 = static_cast<double>(k2) * bin_hz;
  out.p_f1 = power[k1];
  out.p_f2 = power[k2];

  const size_t k_harm = 2 * k1;
  if (k_harm <= nbins && power[k_harm] > 0.0)
    out.harmonic_ratio = power[k1] / power[k_harm];
  else
    out.harmonic_ratio = missing_value();
  out.valid = true;
  return out;
}

namespace {

constexpr size_t kBaselineCount = 11;
constexpr size_t kComplexityCount = 11;
constexpr size_t kCrossCount = 6;
constexpr size_t kMetaCount = 3;
constexpr size_t kAllCount =
    kBaselineCount + kComplexityCount + kCrossCount + kMetaCount;

std::optional<Signal> preprocess_lead(const EcgRecord& record,
                                      const std::string& lead,
                                      const ExtractionParams& params,
                                      std::vector<std::string>* notes,
                                      Signal* detrended_out = nullptr) {
  const std::vector<double>* raw = record.find_lead(lead);
  if (!raw) {
    notes->push_back("lead " + lead + " absent");
    return std::nullopt;
  }
  Signal sig{*raw, record.sampling_rate};
  try {
    Signal detrended = detrend_polynomial(sig, params.detrend_order);
    if (detrended_out) *detrended_out = detrended;
    return standardize(detrended);
  } catch (const Error& e) {
    notes->push_back("lead " + lead + ": " + e.what());
    return std::nullopt;
  }
}

}  // namespace

RecordFeatures extract_record_features(const EcgRecord& record,
                                       const ExtractionParams& params) {
  RecordFeatures out;
  out.record_id = record.record_id;
  out.strat_fold = record.strat_fold;
  out.binary_label = record.binary_label;
  out.superclass_label = primary_superclass(record.superclasses);
  out.values.assign(kAllCount, missing_value());

  Signal detrended;
  const std::optional<Signal> lead_ii = preprocess_lead(
      record, params.complexity_lead, params, &out.notes, &detrended);

  size_t i = 0;
  // baseline block: amplitude (pre-standardization), RR, spectrum
  if (lead_ii) {
    const AmplitudeStats amp = amplitude_stats(detrended.samples);
    out.values[i + 0] = amp.mean;
    out.values[i + 1] = amp.median;
    out.values[i + 2] = amp.std;

    RPeakParams rpeak;
    rpeak.threshold_quantile = params.rpeak_threshold_quantile;
    rpeak.threshold_scale = params.rpeak_threshold_scale;
    rpeak.max_fraction = params.rpeak_max_fraction;
    rpeak.refractory_ms = params.rpeak_refractory_ms;
    const PeakTrain peaks = detect_r_peaks(*lead_ii, rpeak);
    const RrStats rr = rr_stats(peaks);
    if (rr.valid) {
      out.values[i + 3] = rr.mean;
      out.values[i + 4] = rr.median;
      out.values[i + 5] = rr.std;
    } else {
      out.notes.push_back("insufficient peaks for RR features");
    }

    const SpectralFeatures spec = spectral_features(*lead_ii);
    if (spec.valid) {
      out.values[i + 6] = spec.f1;
      out.values[i + 7] = spec.f2;
      out.values[i + 8] = spec.p_f1;
      out.values[i + 9] = spec.p_f2;
      out.values[i + 10] = spec.harmonic_ratio;
    } else {
      out.notes.push_back("spectral features unavailable");
    }
  }
  i += kBaselineCount;

  // complexity block on the standardized lead II signal
  if (lead_ii) {
    const std::vector<double>& x = lead_ii->samples;
    try {
      out.values[i + 0] = higuchi_fd(x, params.complexity.hd_kmax);
      out.values[i + 1] =
          approx_entropy(x, params.complexity.apen_m, params.complexity.apen_r);
      out.values[i + 2] = permutation_entropy(x, params.complexity.permen_m,
                                              params.complexity.permen_tau, true);
      const MseResult mse = multiscale_entropy(
          x, params.complexity.mse_scales, params.complexity.mse_m,
          params.complexity.mse_r);
      out.values[i + 3] = mse.scalar;
      out.values[i + 4] = lz_complexity(x);

      const RecurrencePlot rp =
          recurrence_plot(x, params.rqa_m, params.rqa_tau, params.rqa_target_rr);
      out.rqa_tau = rp.params.tau;
      if (rp.degenerate) out.notes.push_back("degenerate recurrence geometry");
      const RqaSummary sum = rqa(rp, params.rqa_l_min, params.rqa_v_min);
      out.values[i + 5] = sum.det;
      out.values[i + 6] = sum.lam;
      out.values[i + 7] = sum.dbyl;
      out.values[i + 8] = sum.tt;
      out.values[i + 9] = sum.d_ent;
      out.values[i + 10] = sum.v_ent;
    } catch (const Error& e) {
      out.notes.push_back(std::string("complexity block: ") + e.what());
    }
  }
  i += kComplexityCount;

  // cross-channel block
  if (params.cross_leads.size() == 3) {
    const std::optional<Signal> a =
        preprocess_lead(record, params.cross_leads[0], params, &out.notes);
    const std::optional<Signal> b =
        preprocess_lead(record, params.cross_leads[1], params, &out.notes);
    const std::optional<Signal> c =
        preprocess_lead(record, params.cross_leads[2], params, &out.notes);
    auto pair_features = [&](const std::optional<Signal>& u,
                             const std::optional<Signal>& v, size_t rho_slot,
                             size_t mi_slot) {
      if (!u || !v || u->samples.size() != v->samples.size()) return;
      try {
        out.values[rho_slot] = spearman(u->samples, v->samples);
      } catch (const Error& e) {
        out.notes.push_back(std::string("spearman: ") + e.what());
      }
      try {
        out.values[mi_slot] =
            mutual_information(u->samples, v->samples, params.mi_bins);
      } catch (const Error& e) {
        out.notes.push_back(std::string("mutual information: ") + e.what());
      }
    };
    pair_features(a, b, i + 0, i + 3);  // II-AVL
    pair_features(a, c, i + 1, i + 4);  // II-V2
    pair_features(c, b, i + 2, i + 5);  // V2-AVL
  }
  i += kCrossCount;

  // demographics
  if (record.age) out.values[i + 0] = *record.age;
  if (record.sex) out.values[i + 1] = *record.sex == Sex::male ? 0.0 : 1.0;
  if (record.weight) out.values[i + 2] = *record.weight;

  return out;
}

FeatureTable assemble(const std::vector<RecordFeatures>& records,
                      FeatureSet set, std::vector<std::string>* dropped_ids) {
  FeatureTable table;
  table.feature_names = feature_columns(set);
  const size_t ncols = table.feature_names.size();

  for (const auto& rec : records) {
    FeatureRow row;
    row.record_id = rec.record_id;
    row.values.assign(rec.values.begin(),
                      rec.values.begin() + static_cast<long>(ncols));
    row.binary_label = rec.binary_label;
    row.superclass_label = rec.superclass_label;
    row.strat_fold = rec.strat_fold;

    const size_t missing = static_cast<size_t>(
        std::count_if(row.values.begin(), row.values.end(), is_missing));
    if (2 * missing > ncols) {
      if (dropped_ids) dropped_ids->push_back(rec.record_id);
      continue;
    }
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const FeatureRow& a, const FeatureRow& b) {
              return record_id_less(a.record_id, b.record_id);
            });
  return table;
}

FeatureTable select_feature_set(const FeatureTable& table, FeatureSet set) {
  FeatureTable out;
  out.feature_names = feature_columns(set);
  out.provenance = table.provenance;
  out.config_hash = table.config_hash;
  std::vector<int> src;
  src.reserve(out.feature_names.size());
  for (const auto& name : out.feature_names) {
    const int col = table.column(name);
    if (col < 0)
      fail(ErrorKind::data, "feature table lacks column '" + name +
                                "' required by feature set " +
                                feature_set_name(set));
    src.push_back(col);
  }
  for (const auto& row : table.rows) {
    FeatureRow r;
    r.record_id = row.record_id;
    r.binary_label = row.binary_label;
    r.superclass_label = row.superclass_label;
    r.strat_fold = row.strat_fold;
    r.values.reserve(src.size());
    for (int col : src) r.values.push_back(row.values[static_cast<size_t>(col)]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace ecgkit
