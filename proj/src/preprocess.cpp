#include "preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "mathutil.hpp"

namespace ecgkit {

Signal detrend_polynomial(const Signal& signal, int order) {
  const size_t n = signal.size();
  if (order < 0) fail(ErrorKind::argument, "detrend: negative order");
  const size_t p = static_cast<size_t>(order) + 1;
  if (n <= p)
    fail(ErrorKind::degenerate,
         "detrend: signal length " + std::to_string(n) +
             " too short for polynomial order " + std::to_string(order));

  // Chebyshev design matrix on t in [-1, 1].
  std::vector<double> design(n * p);
  for (size_t i = 0; i < n; ++i) {
    const double t =
        n == 1 ? 0.0
               : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    double tkm1 = 1.0, tk = t;
    design[i * p + 0] = 1.0;
    if (p > 1) design[i * p + 1] = t;
    for (size_t k = 2; k < p; ++k) {
      const double tkp1 = 2.0 * t * tk - tkm1;
      design[i * p + k] = tkp1;
      tkm1 = tk;
      tk = tkp1;
    }
  }

  const std::vector<double> coef =
      least_squares(design, n, p, std::span<const double>(signal.samples));

  Signal out;
  out.sampling_rate = signal.sampling_rate;
  out.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (size_t k = 0; k < p; ++k) fit += coef[k] * design[i * p + k];
    out.samples[i] = signal.samples[i] - fit;
  }
  return out;
}

Signal standardize(const Signal& signal) {
  const auto& x = signal.samples;
  if (x.size() < 2) fail(ErrorKind::argument, "standardize: length < 2");
  const double m = mean(x);
  const double sd = stddev_population(x);
  if (sd <= 0.0 || !std::isfinite(sd))
    fail(ErrorKind::degenerate, "standardize: flat signal (zero variance)");
  Signal out;
  out.sampling_rate = signal.sampling_rate;
  out.samples.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) out.samples[i] = (x[i] - m) / sd;
  return out;
}

PeakTrain detect_r_peaks(const Signal& signal, const RPeakParams& params) {
  PeakTrain train;
  const auto& x = signal.samples;
  const size_t n = x.size();
  if (n < 3 || signal.sampling_rate <= 0.0) return train;

  const double q = quantile(x, params.threshold_quantile);
  const double mx = *std::max_element(x.begin(), x.end());
  const double threshold =
      std::max(params.threshold_scale * q, params.max_fraction * mx);
  const auto refractory = static_cast<size_t>(
      std::lround(params.refractory_ms / 1000.0 * signal.sampling_rate));

  for (size_t i = 1; i + 1 < n; ++i) {
    if (!(x[i] > threshold)) continue;
    if (!(x[i] > x[i - 1] && x[i] > x[i + 1])) continue;
    if (!train.indices.empty() && i - train.indices.back() < refractory) {
      // Inside the refractory window the taller candidate wins.
      if (x[i] > x[train.indices.back()]) train.indices.back() = i;
      continue;
    }
    train.indices.push_back(i);
  }

  for (size_t k = 1; k < train.indices.size(); ++k)
    train.rr_intervals.push_back(
        static_cast<double>(train.indices[k] - train.indices[k - 1]) /
        signal.sampling_rate);
  return train;
}

}  // namespace ecgkit
